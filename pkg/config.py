import os

from dotenv import load_dotenv

# Загружаем переменные окружения из файла .env (если он есть)
load_dotenv()

# Каталог по умолчанию для отчётов CLI
OUTPUT_DIR = os.getenv("STABILITY_OUTPUT_DIR", "reports")

# Каталог для логов времени выполнения
LOG_DIR = os.getenv("STABILITY_LOG_DIR", "logs")

LOGGING_TIME_USAGE = os.getenv("STABILITY_LOG_TIMING", "1").strip().lower() not in ("0", "false", "no", "off")

# Параметры t-норм
TNORM_CONFIG = {
    "slack": 1e-12,  # Допуск на выход аргумента за [0,1] (накопленное округление)
    "tail_depth": 64,  # Глубина усечения бесконечной свёртки
    "tail_threshold": 1e-6,  # Порог суммы последнего блока дефектов для Лукасевича
    "stable_run": 5,  # Сколько нулевых декрементов подряд считаем стабилизацией
}

# Параметры функций распределения
DISTRIBUTION_CONFIG = {
    "grid_min": 1e-6,  # Левая граница логарифмической сетки по t
    "grid_max": 1e6,  # Правая граница логарифмической сетки по t
    "grid_points": 121,  # Количество узлов сетки
    "order_slack": 1e-12,  # Допуск при сравнении F(t) <= G(t)
    "limit_tolerance": 1e-6,  # Допуск для F(+inf) = 1
    "limit_factor": 1e9,  # Точка проверки предела: limit_factor * масштаб
}

# Параметры случайных нормированных пространств
RNSPACE_CONFIG = {
    "coordinate_range": 10.0,  # Координаты равномерно в [-10, 10]
    "t_log_min": -3.0,  # t, s логравномерно в [1e-3, 1e3]
    "t_log_max": 3.0,
    "alpha_range": 4.0,  # alpha равномерно в [-4, 4] без нуля
    "axiom_slack": 1e-12,  # Допуск при проверке аксиом
}

# Параметры функциональных уравнений
FUNCEQ_CONFIG = {
    "noise_digits": 12,  # Знаков после запятой в ключе шума
    "residual_tolerance": 1e-9,  # Относительный допуск невязки
}

# Параметры прямого метода
HYERS_CONFIG = {
    "depth": 50,  # Глубина усечения T_{i=1}^{inf}
    "n_max": 12,  # Максимальный уровень 2^n x
    "tol": 1e-6,  # Порог сходимости последнего приращения
    "evaluation_limit": 1e9,  # Максимальная норма точки 2^n x
    "coordinate_limit": 1e6,  # Максимальная координата входной сетки
    "max_levels": 20,  # Потолок для n_max
    "pass_slack": 1e-9,  # lhs >= rhs - pass_slack
    "proxy_threshold": 1e-6,  # Терм условия считаем равным 1, если > 1 - порог
    "oracle_max_level": 8,  # Точная арифметика перепроверяет уровни n <= 8
    "oracle_tolerance": 1e-12,  # Допуск сверки с точным оракулом
    "float_noise_factor": 64.0,  # float: приращение меньше factor * eps * масштаб |f| считаем шумом округления
    "defect_factor": 40.0,  # Масштаб StepDefect в синтетических опытах: 40 * delta
}
