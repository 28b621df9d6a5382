"""python -m extlearn"""
from extlearn.cli import main

if __name__ == "__main__":
    main()
