from django.apps import AppConfig


class GmodConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'gmod'
    verbose_name = 'Graded modules'
