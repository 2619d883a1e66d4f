from django.apps import AppConfig


class AutomorphismsConfig(AppConfig):
    name = 'automorphisms'
