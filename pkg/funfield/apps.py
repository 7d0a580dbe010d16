from django.apps import AppConfig


class FunfieldConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "funfield"
    verbose_name = "Function field expansions"
