#!/usr/bin/env python
import sys

if __name__ == "__main__":
    from chaos_mm.app import main

    # Same entry point as the `chaos-mm` console script
    sys.exit(main())
