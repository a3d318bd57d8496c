"""gcfloer: exact computations for the cut U(3) coadjoint orbit family.

Subpackages cover rational linear algebra (:mod:`gcfloer.ratlin`),
truncated Novikov scalars (:mod:`gcfloer.novikov`), moment polytopes
(:mod:`gcfloer.polytope`), shifted Laurent potentials
(:mod:`gcfloer.potential`), Newton polygons (:mod:`gcfloer.tropical`),
the critical point pipeline (:mod:`gcfloer.critsolve`), probe sweeps
(:mod:`gcfloer.probes`) and graded Clifford checks
(:mod:`gcfloer.algebra`).
"""

__version__ = "0.1.0"
