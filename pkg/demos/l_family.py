"""Walk through the L-family: finite stages are not weakly dense, the limit is."""
from __future__ import annotations

from kscatter import attrs, hierarchy_info, parse, to_text


def row(name: str):
    t = parse(name)
    r = attrs(t)
    h = hierarchy_info(t)
    print(f"{name:4} {to_text(t)[:48]:48} wkd={r.weakly_kappa_dense!s:5} wf_k={r.wf_kappa!s:5} "
          f"wks={r.weakly_kappa_scattered!s:5} sks={r.strongly_kappa_scattered!s:5} h={h.status}")


if __name__ == "__main__":
    for name in ("L0", "L1", "L2", "L3", "L"):
        row(name)
    print()
    print("The limit embeds a weakly kappa-dense order (itself) yet stays in the hierarchy.")
    r = attrs(parse("lsum(ac(2); k, ac(w))"))
    print(f"two-block witness: fac={r.fac} kappa_ac={r.kappa_ac} wks={r.weakly_kappa_scattered}")
