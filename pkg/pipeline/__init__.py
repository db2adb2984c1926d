# pipeline/__init__.py
