# Non-functional tests package
