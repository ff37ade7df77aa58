"""
How many admissible multiplicity pairs?
=======================================

Count the pairs (m1, m2) that pass validation for k = 6 as the search bound
grows, and check a few of them end to end.
"""

from einstein5.certifier import certify, enumerate_parameters, family_params

for bound in (5, 7, 10, 20, 50, 100):
    print(bound, len(enumerate_parameters(6, bound)))

print(enumerate_parameters(6, 7))

# larger k needs m2 to outgrow m1
for k in range(6, 11):
    print(k, enumerate_parameters(k, 9))

###############################################################################
# Each surviving triple gives a connected sum of k copies of S^2 x S^3.

for k in (6, 8, 10):
    m1, m2 = enumerate_parameters(k, 15)[0]
    cert = certify(family_params(k, m1, m2))
    print(k, (m1, m2), cert.diffeo_type, cert.einstein_status)
