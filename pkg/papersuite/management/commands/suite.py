import json
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from papersuite.exceptions import UnknownCaseError
from papersuite.serializers import report_json
from papersuite.services import SuiteService


class Command(BaseCommand):
    help = 'Run the verification cases and store the run'

    def add_arguments(self, parser):
        parser.add_argument(
            '--case',
            action='append',
            dest='cases',
            help='Case id to run; repeat for several (default: all cases)'
        )
        parser.add_argument(
            '--threads',
            type=int,
            default=None,
            help='Number of cases run in parallel'
        )
        parser.add_argument(
            '--out',
            help='Write the JSON report to this file'
        )

    def handle(self, *args, **options):
        service = SuiteService(options['threads'])
        try:
            result = service.run_all(options['cases'])
        except UnknownCaseError as e:
            raise CommandError(str(e))

        for report in result['cases']:
            line = f"{report['case']:<24} {report['status']:<6} {report['seconds']:>8.1f}s"
            if report['status'] == 'pass':
                self.stdout.write(self.style.SUCCESS(line))
            else:
                self.stdout.write(self.style.ERROR(line))

        if options['out']:
            Path(options['out']).write_text(json.dumps(report_json(result), sort_keys=True, indent=2) + '\n')

        if not result['success']:
            raise CommandError(f"{len(result['failures'])} failing cases: {', '.join(result['failures'])}")
        self.stdout.write(self.style.SUCCESS(f"All {len(result['cases'])} cases passed in {result['seconds']:.1f}s"))
