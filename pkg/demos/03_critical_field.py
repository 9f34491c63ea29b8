"""Local third critical field of the disc against its large-kappa form."""

from hc3.critical_field import asymptotic_field, hc3_local

print(f"{'kappa':>6} {'H':>14} {'kappa/Theta0 + C1/Theta0^1.5':>30} {'gap*kappa':>10}")
for kappa in (5, 10, 20, 40):
    r = hc3_local(kappa, with_local_fields=True)
    a = asymptotic_field(kappa)
    print(f"{kappa:6d} {r.H:14.8f} {a:30.8f} {(r.H - a) * kappa:10.4f}"
          f"   lower=upper: {r.lower_local == r.upper_local}")
