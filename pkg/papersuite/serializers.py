from rest_framework import serializers

from .models import CaseResult, SuiteRun


class CaseReportSerializer(serializers.Serializer):
    """Serializer for one entry of the suite report: {case, status, diffs, seconds, anchor}"""
    case = serializers.CharField()
    status = serializers.ChoiceField(choices=['pass', 'fail', 'error'])
    diffs = serializers.ListField(child=serializers.DictField())
    seconds = serializers.FloatField(min_value=0)
    anchor = serializers.CharField()
    details = serializers.DictField(required=False)
    error = serializers.CharField(required=False, allow_blank=True)


class CaseResultSerializer(serializers.ModelSerializer):
    """Serializer for CaseResult model"""

    class Meta:
        model = CaseResult
        fields = ['id', 'run', 'case', 'status', 'anchor', 'diffs', 'details', 'error', 'seconds', 'created_at']
        read_only_fields = ['id', 'created_at']


class SuiteRunSerializer(serializers.ModelSerializer):
    """Serializer for SuiteRun model with its case results"""
    results = CaseResultSerializer(many=True, read_only=True)
    success = serializers.BooleanField(read_only=True)

    class Meta:
        model = SuiteRun
        fields = [
            'id', 'status', 'success', 'threads', 'case_count', 'failure_count', 'seconds',
            'started_at', 'finished_at', 'results'
        ]
        read_only_fields = ['id', 'started_at', 'finished_at']


def report_json(result: dict) -> dict:
    """The suite report for the cases of a run_all result, validated against the schema"""
    serializer = CaseReportSerializer(data=result['cases'], many=True)
    serializer.is_valid(raise_exception=True)
    return {'success': result['success'], 'run_id': result['run_id'], 'seconds': result['seconds'],
            'cases': serializer.validated_data}
