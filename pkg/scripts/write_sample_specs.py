"""
Write a handful of sample spec documents for trying out the command line
"""
import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import argparse

from models.constructors import MatroidSpec
from services.spec_io import emit_spec

SAMPLES = {
    # 1x1 matrix (2): Z = 1 + 2*q^-1*v0
    'two.json': MatroidSpec.matrix([[2]]),
    'diagonal.json': MatroidSpec.matrix([[2, 0], [0, 3]]),
    'three_vectors.json': MatroidSpec.matrix([[2, 0], [0, 3], [1, 1]]),
    'triangle.json': MatroidSpec.graphic(3, [[0, 1], [1, 2], [0, 2]]),
    'u24.json': MatroidSpec.uniform(2, 4),
    # m(empty) = 2, m({0}) = 3 breaks the divisibility axiom
    'broken.json': MatroidSpec.explicit([0, 1], [2, 3]),
    'two_trivial.json': MatroidSpec.explicit([0, 1], [1, 1]),
}


def write_samples(directory: str):
    """Write every sample spec into directory"""
    os.makedirs(directory, exist_ok=True)

    print(f"\n{'='*60}")
    print("Writing sample spec documents")
    print(f"{'='*60}\n")

    for filename, spec in SAMPLES.items():
        path = os.path.join(directory, filename)
        with open(path, 'w') as f:
            f.write(emit_spec(spec) + '\n')
        print(f"  {spec.kind.value:<9} n={spec.ground_size}  {path}")

    print(f"\nWrote {len(SAMPLES)} documents. Try:")
    print(f"  python app.py compute --input {os.path.join(directory, 'two.json')} --poly arith-tutte")
    print(f"  python app.py verify --input {os.path.join(directory, 'two.json')} --identity char")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument('directory', nargs='?', default='samples')
    write_samples(parser.parse_args().directory)
