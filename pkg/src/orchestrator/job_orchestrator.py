"""
Bounded worker pool for independent numeric jobs.

Jobs are synchronous callables executed through asyncio.to_thread under a
semaphore; results come back in submission order.
Follows SRP: Job scheduling only.
"""

import asyncio
import logging
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

from src.common.config import settings

logger = logging.getLogger(__name__)


@dataclass
class Job:
    """Queued unit of work"""
    index: int
    job_id: str
    fn: Callable[[], Any]
    timeout: Optional[float] = None


@dataclass
class JobResult:
    """Outcome of one job"""
    job_id: str
    value: Any = None
    error: Optional[BaseException] = None
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.error is None


class JobOrchestrator:
    """
    Worker pool with a concurrency cap.

    Passing criteria:
    - Semaphore limits concurrent jobs to max_concurrent
    - results() returns one JobResult per submitted job, in submission order
    - Timeout marks a job failed with asyncio.TimeoutError
    - shutdown() cancels idle workers
    """

    def __init__(self, max_concurrent: Optional[int] = None, max_queued: int = 1000):
        self._max_concurrent = max(1, max_concurrent or settings.jobs)
        self._max_queued = max_queued
        self._queue: asyncio.Queue = asyncio.Queue(maxsize=max_queued)
        self._semaphore = asyncio.Semaphore(self._max_concurrent)
        self._workers: List[asyncio.Task] = []
        self._results: Dict[int, JobResult] = {}
        self._submitted = 0
        self._active = 0
        self._shutdown_flag = False

    async def start(self, num_workers: Optional[int] = None):
        """Start worker pool"""
        for worker_id in range(num_workers or self._max_concurrent):
            self._workers.append(asyncio.create_task(self._worker(worker_id)))

    async def submit(self, job_id: str, fn: Callable[[], Any], timeout: Optional[float] = None) -> int:
        """Queue a job; blocks when the queue is full"""
        if self._shutdown_flag:
            raise RuntimeError("Orchestrator is shutting down")
        job = Job(self._submitted, job_id, fn, timeout)
        self._submitted += 1
        await self._queue.put(job)
        return job.index

    async def _worker(self, worker_id: int):
        while not self._shutdown_flag:
            try:
                job = await asyncio.wait_for(self._queue.get(), timeout=1.0)
            except asyncio.TimeoutError:
                continue

            async with self._semaphore:
                self._active += 1
                start = time.perf_counter()
                result = JobResult(job.job_id)
                try:
                    call = asyncio.to_thread(job.fn)
                    result.value = await (asyncio.wait_for(call, job.timeout) if job.timeout else call)
                except asyncio.CancelledError:
                    raise
                except Exception as e:
                    logger.warning("job %s failed: %s", job.job_id, e)
                    result.error = e
                finally:
                    result.elapsed = time.perf_counter() - start
                    self._results[job.index] = result
                    self._active -= 1
                    self._queue.task_done()

    async def results(self) -> List[JobResult]:
        """Wait for every submitted job; results in submission order"""
        await self._queue.join()
        return [self._results[i] for i in range(self._submitted)]

    async def shutdown(self):
        """Stop workers"""
        self._shutdown_flag = True
        for worker in self._workers:
            worker.cancel()
        await asyncio.gather(*self._workers, return_exceptions=True)

    def get_queue_stats(self) -> Dict[str, int]:
        return {
            "queued": self._queue.qsize(),
            "active": self._active,
            "done": len(self._results),
            "max_queued": self._max_queued,
            "max_concurrent": self._max_concurrent,
        }


async def _gather(jobs: Sequence[Callable[[], Any]], max_concurrent: int) -> List[JobResult]:
    orchestrator = JobOrchestrator(max_concurrent=max_concurrent)
    await orchestrator.start()
    try:
        for i, fn in enumerate(jobs):
            await orchestrator.submit(f"job-{i}", fn)
        return await orchestrator.results()
    finally:
        await orchestrator.shutdown()


def run_jobs(jobs: Sequence[Callable[[], Any]], max_concurrent: Optional[int] = None) -> List[Any]:
    """
    Run jobs and return their values in submission order.

    The first failure (in submission order) is re-raised after all jobs finish.
    """
    limit = max(1, max_concurrent or settings.jobs)
    if limit == 1 or len(jobs) <= 1:
        return [fn() for fn in jobs]
    results = asyncio.run(_gather(jobs, limit))
    for result in results:
        if not result.ok:
            raise result.error
    return [r.value for r in results]
