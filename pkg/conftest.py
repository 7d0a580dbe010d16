import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "creepers.settings")
django.setup()
