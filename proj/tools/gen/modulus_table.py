"""Regenerates core/src/modulus_table.inc: smallest primitive polynomials."""
import sys


def is_primitive(f, p, n):
    order = p**n - 1
    cur = [1] + [0] * (n - 1)
    for k in range(1, order + 1):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [(c - top * fi) % p for c, fi in zip(cur, f)]
        if cur[0] == 1 and not any(cur[1:]):
            return k == order
    return False


def smallest(p, n):
    for code in range(p**n):
        f = [(code // p**i) % p for i in range(n)] + [1]
        if n == 1:
            r = (-f[0]) % p
            if r == 0:
                continue
            v, o = r, 1
            while v != 1:
                v, o = v * r % p, o + 1
            if o == p - 1:
                return f
            continue
        if f[0] == 0:
            continue
        if is_primitive(f, p, n):
            return f
    raise ValueError((p, n))


def main(cap=1 << 16):
    rows = []
    for p in (2, 3, 5, 7, 11, 13):
        n = 1
        while p**n <= cap:
            rows.append((p, n, smallest(p, n)))
            n += 1
    out = ["// Generated by tools/gen/modulus_table.py; do not edit.",
           "namespace phl {", "namespace {",
           "struct ModulusEntry { int p; int n; int coeffs[17]; };",
           "constexpr ModulusEntry kModulusTable[] = {"]
    for p, n, f in rows:
        out.append("    {%d, %d, {%s}}," % (p, n, ", ".join(map(str, f))))
    out += ["};", "}  // namespace", "}  // namespace phl", ""]
    sys.stdout.write("\n".join(out))


if __name__ == "__main__":
    main()
