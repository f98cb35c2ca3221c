# Test core package
