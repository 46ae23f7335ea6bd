"""Euler numbers of a Fuchsian representation and its branch lifts.

Each of the 16 lifts of the genus 2 representation to the double cover has
Euler number 1, and their generator rotation numbers tell them apart.
"""

from circlerep.semiconj import fingerprint, same_class_candidate
from circlerep.surface import all_lifts, euler, fuchsian_rep, relator_translation

rep = fuchsian_rep(2)
n, residual = relator_translation(rep)
print("genus 2 Fuchsian: euler %d (relator residual %.1e)" % (n, residual))

lifts = all_lifts(rep, 2)
fps = []
for branches, lift in lifts:
    fp = fingerprint(lift, 1)
    fps.append(fp)
    rots = " ".join(str(r) for r in fp.generator_rots)
    print("branches %s  euler %d  rotations %s" % (branches, euler(lift), rots))

distinct = sum(same_class_candidate(a, b).distinct for i, a in enumerate(fps) for b in fps[i + 1:])
print("%d of %d pairs certified DISTINCT" % (distinct, len(fps) * (len(fps) - 1) // 2))
