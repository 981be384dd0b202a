# Pytest fixtures
