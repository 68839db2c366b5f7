"""
CLI module entry point for concept-homology.
"""

from .main import main

if __name__ == "__main__":
    main()
