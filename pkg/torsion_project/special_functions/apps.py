from django.apps import AppConfig


class SpecialFunctionsConfig(AppConfig):
    name = 'special_functions'
