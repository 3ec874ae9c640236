import sys

from topic_labeler.cli import main

sys.exit(main())
