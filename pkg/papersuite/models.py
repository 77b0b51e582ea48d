from django.db import models
import uuid


class SuiteRun(models.Model):
    """One execution of a set of suite cases"""
    STATUS_CHOICES = [
        ('running', 'Running'),
        ('passed', 'Passed'),
        ('failed', 'Failed'),
    ]

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    status = models.CharField(max_length=20, choices=STATUS_CHOICES, default='running')
    threads = models.PositiveIntegerField(default=1)
    case_count = models.PositiveIntegerField(default=0)
    failure_count = models.PositiveIntegerField(default=0)
    seconds = models.FloatField(default=0)
    started_at = models.DateTimeField(auto_now_add=True)
    finished_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        db_table = 'suite_runs'
        ordering = ['-started_at']

    def __str__(self):
        return f"Suite run {self.id} ({self.status})"

    @property
    def success(self):
        return self.status == 'passed'


class CaseResult(models.Model):
    """Outcome of one case inside a suite run"""
    STATUS_CHOICES = [
        ('pass', 'Pass'),
        ('fail', 'Fail'),
        ('error', 'Error'),
    ]

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    run = models.ForeignKey(SuiteRun, on_delete=models.CASCADE, related_name='results')
    case = models.CharField(max_length=100)
    status = models.CharField(max_length=10, choices=STATUS_CHOICES)
    anchor = models.TextField(blank=True)
    diffs = models.JSONField(default=list)
    details = models.JSONField(default=dict)
    error = models.TextField(blank=True)
    seconds = models.FloatField(default=0)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        db_table = 'case_results'
        ordering = ['case']
        unique_together = ['run', 'case']
        indexes = [
            models.Index(fields=['case', 'status'], name='case_result_case_6a1f0e_idx'),
        ]

    def __str__(self):
        return f"{self.case}: {self.status}"
