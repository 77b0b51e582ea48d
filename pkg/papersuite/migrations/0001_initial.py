# Generated by Django 4.2.7 on 2026-10-19 09:12

import django.db.models.deletion
import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SuiteRun',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('status', models.CharField(choices=[('running', 'Running'), ('passed', 'Passed'), ('failed', 'Failed')], default='running', max_length=20)),
                ('threads', models.PositiveIntegerField(default=1)),
                ('case_count', models.PositiveIntegerField(default=0)),
                ('failure_count', models.PositiveIntegerField(default=0)),
                ('seconds', models.FloatField(default=0)),
                ('started_at', models.DateTimeField(auto_now_add=True)),
                ('finished_at', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'db_table': 'suite_runs',
                'ordering': ['-started_at'],
            },
        ),
        migrations.CreateModel(
            name='CaseResult',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('case', models.CharField(max_length=100)),
                ('status', models.CharField(choices=[('pass', 'Pass'), ('fail', 'Fail'), ('error', 'Error')], max_length=10)),
                ('anchor', models.TextField(blank=True)),
                ('diffs', models.JSONField(default=list)),
                ('details', models.JSONField(default=dict)),
                ('error', models.TextField(blank=True)),
                ('seconds', models.FloatField(default=0)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='results', to='papersuite.suiterun')),
            ],
            options={
                'db_table': 'case_results',
                'ordering': ['case'],
                'indexes': [models.Index(fields=['case', 'status'], name='case_result_case_6a1f0e_idx')],
                'unique_together': {('run', 'case')},
            },
        ),
    ]
