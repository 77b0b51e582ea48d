import os
from celery import Celery

# Set the default Django settings module for the 'celery' program.
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'extcharts.settings')

app = Celery('extcharts')

app.config_from_object('django.conf:settings', namespace='CELERY')

# Picks up papersuite.tasks
app.autodiscover_tasks()
