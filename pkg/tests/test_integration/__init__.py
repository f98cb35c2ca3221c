# Test integration package
