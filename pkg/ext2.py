#!/usr/bin/env python
"""Stand-alone entry point for the ext2 command line"""
import os
import sys

import django


def run():
    sys.path.append(os.path.dirname(os.path.abspath(__file__)))
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'extcharts.settings')
    django.setup()

    from django.core.management import call_command
    from cli.main import main

    if len(sys.argv) > 1 and sys.argv[1] == 'suite':
        # suite runs are stored in the database
        call_command('migrate', verbosity=0, interactive=False)
    return main(sys.argv[1:])


if __name__ == '__main__':
    sys.exit(run())
