import time

from scratch_deform import P
from polydeform import deform as D
from polydeform.fields import QQ
from polydeform.mpoly import resultant
from polydeform.sfactor import sfactor
from polydeform.upoly import up_deg

fam = P(xy4=1, x2y2=1, y=1, sx5=1)
xv, yv, sv = "x", "y", "s"

t0 = time.time()
Fs, P2 = D._to_fs(fam, xv, yv, sv)
A = P2.partial(xv)
B = P2.partial(yv)
print("partials", time.time() - t0)

t0 = time.time()
res = resultant(A, B, yv)[0]
print("resultant", time.time() - t0, "deg_x", res.degree_in(xv))

t0 = time.time()
r_up = D._upoly_of(res, xv)
r_mp = D.frac_upoly_to_mp(r_up, (xv, sv), xv, sv, Fs)
print("clear", time.time() - t0, "degs", r_mp.degree_in(xv), r_mp.degree_in(sv))

t0 = time.time()
_, factors = sfactor(r_mp, xv, sv)
print("sfactor", time.time() - t0)
for q, m in factors:
    print("  factor deg_x", q.degree_in(xv), "deg_s", q.degree_in(sv), "mult", m)

for q, _ in factors:
    t0 = time.time()
    rec = D._solve_component(Fs, P2, q, A, B, xv, yv, sv, 0)
    print("solve deg", q.degree_in(xv), time.time() - t0,
          None if rec is None else (rec.btype, rec.mu_weight))
