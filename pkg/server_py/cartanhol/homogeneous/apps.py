from django.apps import AppConfig


class HomogeneousConfig(AppConfig):
    name = 'homogeneous'
