"""hellylat: a verification workbench for lattice-to-Helly constructions.

Subpackages by topic:
  poset    finite posets, bowties, flag condition, interval Helly checks
  catalog  concrete poset families (Boolean, partition, subspace, polar, ...)
  garside  braid-group Garside structure, normal forms, thickening balls
  affine   the affine version of a bounded graded lattice and its metric
  helly    graphs, ball/clique Helly checks, epsilon-graphs, thickenings
  coxeter  thin Euclidean complexes on Z^n with local posets
  suites   the verification suites behind the CLI and the test bench
"""

from . import affine, catalog, coxeter, garside, helly, poset, suites

__all__ = ["affine", "catalog", "coxeter", "garside", "helly", "poset", "suites"]
__version__ = "0.1.0"
