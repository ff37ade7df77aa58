"""
A Seifert bundle over a blown-up quadric
========================================

Build the k = 6 bundle with multiplicity 3 along the fiber curve and 5 along
the graph curve, then read off its topology.
"""

from fractions import Fraction

from einstein5 import certifier, seifert

# five blown-up points, Picard rank 7
params = certifier.family_params(6, 3, 5, c=[Fraction(1, 3), Fraction(1, 2)])
lattice, bundle = certifier.build_family(params)
print(lattice.labels)

# the rational Chern class and its integral multiple
print("c1   =", seifert.chern_class(bundle))
print("a*c1 =", seifert.integral_class(bundle))

# H1 from the relation matrix
print(seifert.h1_presentation(bundle).tolist())
print("H1 =", seifert.h1(bundle))

###############################################################################
# Everything at once, as a certificate.

cert = certifier.certify(params)
print(certifier.emit_certificate(cert, "text"))
