import argparse

from django.core.management.base import BaseCommand, CommandError

from cli.main import main


class Command(BaseCommand):
    help = 'Run an ext2 subcommand: validate, resolve, chart, verify, suite or convert'

    def add_arguments(self, parser):
        parser.add_argument('arguments', nargs=argparse.REMAINDER, help='Subcommand and its flags')

    def handle(self, *args, **options):
        status = main(options['arguments'], stdout=self.stdout)
        if status:
            raise CommandError(f'ext2 exited with status {status}', returncode=status)
