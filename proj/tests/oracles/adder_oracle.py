"""Brute-force reference figures for the approximate adder configurations.

Independent of the C++ cell model: LOA results are formed arithmetically
(upper part added as integers, lower part OR-ed) and compared with exact
addition over every operand pair.
"""
import math


def loa_add(a, b, k):
    mask = (1 << k) - 1
    carry = ((a >> (k - 1)) & (b >> (k - 1)) & 1) if k > 0 else 0
    return (((a >> k) + (b >> k) + carry) << k) | ((a | b) & mask)


def carry_only_add(a, b, k):
    # lower k sum bits forced to zero, carry chain exact
    return (a + b) & ~((1 << k) - 1)


def stats(width, fn, ignore_lsbs=0):
    n = 1 << width
    keep = ~((1 << ignore_lsbs) - 1)
    errs = 0
    total_ed = 0
    max_ed = 0
    for a in range(n):
        for b in range(n):
            approx = fn(a, b) & keep
            exact = (a + b) & keep
            ed = abs(approx - exact)
            if ed:
                errs += 1
            total_ed += ed
            max_ed = max(max_ed, ed)
    return errs, total_ed, max_ed, n * n


if __name__ == "__main__":
    for k in range(1, 6):
        e, t, m, n = stats(8, lambda a, b: loa_add(a, b, k))
        print(f"w8 loa k={k}: error_cases={e} sum_ed={t} max_ed={m} total={n} "
              f"rate={e/n!r} med={t/n!r}")
    e, t, m, n = stats(8, lambda a, b: carry_only_add(a, b, 4), ignore_lsbs=4)
    print(f"w8 carryonly k=4 surviving bits: error_cases={e} max_ed={m}")
    e, t, m, n = stats(8, lambda a, b: carry_only_add(a, b, 4))
    print(f"w8 carryonly k=4 full word: error_cases={e} sum_ed={t} max_ed={m}")
    print("loa 23+9 k5:", loa_add(23, 9, 5))
    c1 = (0.01 * 255) ** 2
    print("ssim const 100/150:", repr((2 * 100 * 150 + c1) / (100**2 + 150**2 + c1)))
    print("psnr diff 1:", repr(20 * math.log10(255)))
