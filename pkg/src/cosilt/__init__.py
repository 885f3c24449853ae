"""cosilt: torsion pair lattices, cosilting pairs, bricks and grains
for bound quiver algebras, computed by exact linear algebra."""

__version__ = "0.1.0"
