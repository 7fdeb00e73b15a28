# -*- coding: utf-8 -*-
"""
Точка входа: python main.py <подкоманда> [опции].

    python main.py check-solution --count 200 --seed 1
    python main.py recover --delta 0.01 --x-min 1 --x-max 4
    python main.py verify-bounds --config experiments/step_defect.txt --oracle
    python main.py axioms --samples 10000
    python main.py tnorm-tail --tnorm lukasiewicz --tail harmonic --tail-depth 100000
"""
from cli import cli

if __name__ == "__main__":
    cli()
