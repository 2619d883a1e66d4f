from django.apps import AppConfig


class LieConfig(AppConfig):
    name = 'lie'
