# Smoke tests
