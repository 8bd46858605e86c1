import sys

from mf_reduction.cli import main


if __name__ == "__main__":
    """ the entry of the multifraction reduction toolkit """
    sys.exit(main(sys.argv[1:]))
