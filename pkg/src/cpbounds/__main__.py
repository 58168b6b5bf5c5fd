from cpbounds.cli import run

run()
