"""WSGI entry point serving the read-only GraphQL endpoint at /graphql/."""

import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "creepers.settings")

application = get_wsgi_application()
