"""K-theory of classifying spaces of finite groups via counts of conjugacy
classes of prime-power order: closed forms, generating functions, and a
brute-force enumeration oracle."""

__version__ = "0.1.0"
