import sys

# Exact rational orbits produce integers beyond CPython's default 4300-digit
# str() limit; lift it for the test session.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)
