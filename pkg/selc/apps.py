from django.apps import AppConfig


class SelcConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'selc'
    verbose_name = 'Equivariant log concavity engine'
