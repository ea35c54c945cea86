"""
Tests for the bounded job pool.

Covers ordering, the concurrency cap, timeouts and failure propagation.
"""

import asyncio
import threading
import time

import pytest

from src.orchestrator.job_orchestrator import JobOrchestrator, run_jobs


class TestJobOrchestrator:
    """Async worker pool"""

    @pytest.mark.asyncio
    async def test_results_in_submission_order(self):
        """✅ PASS: slow early jobs still come back first"""
        orchestrator = JobOrchestrator(max_concurrent=4)
        await orchestrator.start()
        try:
            for i in range(6):
                await orchestrator.submit(f"job-{i}", lambda i=i: (time.sleep(0.02 * (6 - i)), i)[1])
            results = await orchestrator.results()
        finally:
            await orchestrator.shutdown()
        assert [r.value for r in results] == list(range(6))
        assert [r.job_id for r in results] == [f"job-{i}" for i in range(6)]
        assert all(r.ok and r.elapsed > 0 for r in results)

    @pytest.mark.asyncio
    async def test_concurrency_cap(self):
        """✅ PASS: never more than max_concurrent jobs at once"""
        lock = threading.Lock()
        state = {"now": 0, "peak": 0}

        def job():
            with lock:
                state["now"] += 1
                state["peak"] = max(state["peak"], state["now"])
            time.sleep(0.02)
            with lock:
                state["now"] -= 1

        orchestrator = JobOrchestrator(max_concurrent=2)
        await orchestrator.start(num_workers=4)
        try:
            for i in range(8):
                await orchestrator.submit(f"job-{i}", job)
            await orchestrator.results()
        finally:
            await orchestrator.shutdown()
        assert state["peak"] <= 2

    @pytest.mark.asyncio
    async def test_timeout_marks_failure(self):
        """❌ FAIL: a job past its timeout carries TimeoutError"""
        orchestrator = JobOrchestrator(max_concurrent=1)
        await orchestrator.start()
        try:
            await orchestrator.submit("slow", lambda: time.sleep(0.5), timeout=0.05)
            [result] = await orchestrator.results()
        finally:
            await orchestrator.shutdown()
        assert not result.ok
        assert isinstance(result.error, asyncio.TimeoutError)

    @pytest.mark.asyncio
    async def test_submit_after_shutdown(self):
        """❌ FAIL: shut-down pool rejects work"""
        orchestrator = JobOrchestrator(max_concurrent=1)
        await orchestrator.start()
        await orchestrator.shutdown()
        with pytest.raises(RuntimeError):
            await orchestrator.submit("late", lambda: None)

    @pytest.mark.asyncio
    async def test_queue_stats(self):
        """✅ PASS: stats report limits and completed jobs"""
        orchestrator = JobOrchestrator(max_concurrent=3, max_queued=10)
        await orchestrator.start()
        try:
            await orchestrator.submit("a", lambda: 1)
            await orchestrator.results()
            stats = orchestrator.get_queue_stats()
        finally:
            await orchestrator.shutdown()
        assert stats == {"queued": 0, "active": 0, "done": 1, "max_queued": 10, "max_concurrent": 3}


class TestRunJobs:
    """Synchronous entry point"""

    def test_serial_path(self):
        """✅ PASS: one worker runs inline"""
        assert run_jobs([lambda: 1, lambda: 2], 1) == [1, 2]

    def test_parallel_path_keeps_order(self):
        """✅ PASS: parallel results follow submission order"""
        jobs = [lambda i=i: (time.sleep(0.01 * (5 - i)), i * i)[1] for i in range(5)]
        assert run_jobs(jobs, 3) == [0, 1, 4, 9, 16]

    def test_empty(self):
        """✅ PASS: no jobs, no results"""
        assert run_jobs([], 4) == []

    def test_first_failure_reraised(self):
        """❌ FAIL: the earliest failing job's error propagates"""

        def boom(msg):
            raise ValueError(msg)

        with pytest.raises(ValueError, match="first"):
            run_jobs([lambda: 1, lambda: boom("first"), lambda: boom("second")], 2)
