"""
Django settings for the creepers project.

Every tunable is read through python-decouple with a default, so the
project runs without a .env file. Nothing is persisted: no database is
configured.
"""

from pathlib import Path

from decouple import Csv, config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config("SECRET_KEY", default="creepers-insecure-development-key")

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = config("DEBUG", default=False, cast=bool)

ALLOWED_HOSTS = config("ALLOWED_HOSTS", default="*", cast=Csv())


# Application definition

INSTALLED_APPS = [
    "django.contrib.staticfiles",
    # Third-party
    "graphene_django",
    "corsheaders",
    # Local
    "surds",
    "families",
    "funfield",
    "tables",
]

MIDDLEWARE = [
    "corsheaders.middleware.CorsMiddleware",
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "creepers.urls"

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.request",
            ],
        },
    },
]
WSGI_APPLICATION = "creepers.wsgi.application"


# Expansions are computed on demand; there is nothing to store.
DATABASES = {}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


STATIC_URL = "static/"

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# GraphQL Configuration
GRAPHENE = {
    "SCHEMA": "creepers.schema.schema",
}

# CORS Configuration
CORS_ALLOWED_ORIGINS = config(
    "CORS_ALLOWED_ORIGINS", default="http://localhost:3000", cast=Csv()
)

# Expansion engines
CREEPERS = {
    "MAX_STEPS": config("CREEPERS_MAX_STEPS", default=1_000_000, cast=int),
    "PRECISION_BITS": config("CREEPERS_PRECISION_BITS", default=128, cast=int),
    "SCAN_WORKERS": config("CREEPERS_SCAN_WORKERS", default=1, cast=int),
    "FIXTURE_DIR": Path(config("CREEPERS_FIXTURE_DIR", default=str(BASE_DIR / "fixtures"))),
    "FF_MAX_STEPS": config("CREEPERS_FF_MAX_STEPS", default=200, cast=int),
}

# Logging goes to stderr so that command output on stdout stays plain TSV.
LOG_LEVEL = config("LOG_LEVEL", default="WARNING")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {name} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "stderr": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "verbose",
        },
    },
    "root": {
        "handlers": ["stderr"],
        "level": LOG_LEVEL,
    },
}
