import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional

import numpy as np
from django.conf import settings
from django.db import transaction
from django.utils import timezone

from .cases import case_ids, get_case
from .models import CaseResult, SuiteRun

logger = logging.getLogger(__name__)


def plain(value):
    """Copy of a case result with numpy scalars, arrays and tuples turned into JSON types"""
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


class SuiteService:
    """Runs registered cases and records the outcome of each run"""

    def __init__(self, threads: Optional[int] = None):
        self.threads = max(1, threads or getattr(settings, 'EXT2_THREADS', 1))

    def run_case(self, case_id: str) -> dict:
        """Report {case, status, diffs, seconds, anchor, details} for one case; never raises for case failures"""
        suite_case = get_case(case_id)
        start = time.time()
        try:
            result = suite_case.run()
            status = 'pass' if result['success'] else 'fail'
            report = {'diffs': result['diffs'], 'details': result['details'], 'error': ''}
        except Exception as e:
            logger.exception('Case %s raised', case_id)
            status = 'error'
            report = {'diffs': [], 'details': {'success': False, 'error': str(e)}, 'error': str(e)}
        seconds = round(time.time() - start, 3)
        logger.info('Case %s: %s in %.1fs', case_id, status, seconds)
        return plain({
            'case': case_id,
            'status': status,
            'anchor': suite_case.anchor,
            'seconds': seconds,
            **report,
        })

    def run_all(self, ids: Optional[Iterable[str]] = None) -> dict:
        """Run the given cases (all by default) in parallel and persist a SuiteRun"""
        ids = sorted(ids) if ids else case_ids()
        for case_id in ids:
            get_case(case_id)
        start = time.time()
        run = SuiteRun.objects.create(threads=self.threads, case_count=len(ids))
        if self.threads == 1:
            reports = [self.run_case(case_id) for case_id in ids]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                reports = list(pool.map(self.run_case, ids))
        reports.sort(key=lambda r: r['case'])
        failures = [r for r in reports if r['status'] != 'pass']
        with transaction.atomic():
            CaseResult.objects.bulk_create([
                CaseResult(run=run, case=r['case'], status=r['status'], anchor=r['anchor'],
                           diffs=r['diffs'], details=r['details'], error=r['error'], seconds=r['seconds'])
                for r in reports
            ])
            run.status = 'failed' if failures else 'passed'
            run.failure_count = len(failures)
            run.seconds = round(time.time() - start, 3)
            run.finished_at = timezone.now()
            run.save()
        logger.info('Suite run %s: %d cases, %d failures, %.1fs', run.id, len(reports), len(failures), run.seconds)
        return {
            'success': not failures,
            'run_id': str(run.id),
            'seconds': run.seconds,
            'failures': [r['case'] for r in failures],
            'cases': reports,
        }


def run_case(case_id: str) -> dict:
    return SuiteService().run_case(case_id)


def run_all(threads: Optional[int] = None, ids: Optional[List[str]] = None) -> dict:
    return SuiteService(threads).run_all(ids)
