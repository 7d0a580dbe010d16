from django.apps import AppConfig


class SurdsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "surds"
    verbose_name = "Quadratic surd expansions"
