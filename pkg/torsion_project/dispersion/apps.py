from django.apps import AppConfig


class DispersionConfig(AppConfig):
    name = 'dispersion'
