# Functional tests package
