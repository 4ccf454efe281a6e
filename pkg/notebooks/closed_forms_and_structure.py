"""Closed forms for large degrees and the component structure at n = 8."""

# %%
from powerquotient import build_bundle, closed_form_sn, symmetric_group
from powerquotient.counting import connectivity_equivalences, structure_report

for n in range(2, 20):
    r = closed_form_sn(n)
    print(f"n={n:2d}  {r.regime:15s} c0={r.c0}  type={r.c0_type}  order={r.c0_order}")

# %%
# n = 8: one large component plus isolated classes of 7-cycles.
rep = structure_report(build_bundle(symmetric_group(8)))
print("main component size", rep.main_size)
print("other components", len(rep.others))
o = rep.others[0]
print("first other:", o.type_census, "explicit size", o.explicit_size, "complete", o.explicit_complete)

# %%
# The six flags always agree. For n >= 3 they are false exactly at primes and primes plus one.
for n in (7, 8, 9, 10, 11, 12):
    f = connectivity_equivalences(n)
    print(n, f.values, "agree" if f.agree else "DISAGREE")
