from .match.cli import main

raise SystemExit(main())
