# Test data module
