"""Sub-commands of the ``singan`` CLI; each module exposes ``register(subparsers)``."""
