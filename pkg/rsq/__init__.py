"""
rsq - exact computations for radical-square-zero algebras kQ/(kQ+)^2.

Modules:
    - quiver: finite quivers, walks, grading period, shape recognition
    - cover: windows of the minimal gradable covering
    - linalg: exact linear algebra over Q and F_p
    - algebra: projective modules and their morphism calculus
    - complexes: radical complexes, homology and homotopy Hom
    - koszul: Koszul functor, twist and push-down
    - reps: quiver representations and almost split sequences
    - ar_window: translation quiver fragments and shape reports
    - derived_ar: simple complexes, almost split triangles, classification
"""

__version__ = "0.1.0"
