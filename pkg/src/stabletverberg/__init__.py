"""Stable-set simplicial complexes, their homology, and Tverberg-type certificates.

Subpackages are plain modules:

- ``complex``: simplicial complexes stored by maximal faces, joins, relabelling
- ``families``: q-stable complexes on paths and cycles and identities among them
- ``homology``: exact reduced homology over Z, Q and prime fields
- ``lp``: exact rational simplex method with Farkas certificates
- ``tverberg``: partition searches and certificates for affine maps
- ``planner``: prime selection and routing arithmetic
- ``certify``: parameter-grid reports
- ``cli``: command-line entry point
"""

__version__ = "0.1.0"
