"""qrep: computations with bound quiver algebras and their representations."""
