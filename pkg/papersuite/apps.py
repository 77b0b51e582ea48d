from django.apps import AppConfig


class PapersuiteConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'papersuite'
    verbose_name = 'Verification suite'
