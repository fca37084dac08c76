import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'eqlc.settings')
django.setup()
