class DomainError(ValueError):
    """Аргумент вне математической области определения операции."""


class ConfigError(ValueError):
    """Ошибка разбора или валидации конфигурации эксперимента."""
