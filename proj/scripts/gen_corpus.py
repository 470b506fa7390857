#!/usr/bin/env python3
"""Generate the bundled AIGER benchmark corpus.

Writes benchmarks/corpus/*.aag (mixed SAFE/UNSAFE small circuits),
benchmarks/aig/*.aig (binary twins of the corpus) and
benchmarks/guarded/*.aag (parameterized SAFE guarded counters).
"""

import argparse
import json
import pathlib


class Aig:
    """Tiny AIG builder with structural hashing and constant folding."""

    def __init__(self):
        self.nodes = []  # ('i',) | ('l', init) | ('a', x, y)
        self.strash = {}
        self.next = {}
        self.bads = []
        self.constraints = []
        self.outputs = []

    def _new(self, node):
        self.nodes.append(node)
        return 2 * len(self.nodes)

    def input(self):
        return self._new(('i',))

    def latch(self, init=0):
        """init: 0, 1 or None for an undefined (X) reset."""
        return self._new(('l', init))

    def set_next(self, latch, lit):
        self.next[latch] = lit

    def and_(self, a, b):
        if a > b:
            a, b = b, a
        if a == 0 or a == (b ^ 1):
            return 0
        if a == 1 or a == b:
            return b
        key = (a, b)
        if key not in self.strash:
            self.strash[key] = self._new(('a', a, b))
        return self.strash[key]

    def or_(self, a, b):
        return self.and_(a ^ 1, b ^ 1) ^ 1

    def xor(self, a, b):
        return self.or_(self.and_(a, b ^ 1), self.and_(a ^ 1, b))

    def mux(self, s, t, e):
        return self.or_(self.and_(s, t), self.and_(s ^ 1, e))

    def all(self, lits):
        r = 1
        for x in lits:
            r = self.and_(r, x)
        return r

    def any(self, lits):
        r = 0
        for x in lits:
            r = self.or_(r, x)
        return r

    # --- words (little endian lists of literals) ---------------------------
    def word_latches(self, n, value=0):
        return [self.latch((value >> i) & 1) for i in range(n)]

    def incr(self, w, enable=1):
        out, carry = [], enable
        for b in w:
            out.append(self.xor(b, carry))
            carry = self.and_(b, carry)
        return out

    def eq_const(self, w, k):
        return self.all([b if (k >> i) & 1 else b ^ 1 for i, b in enumerate(w)])

    def ge_const(self, w, k):
        """Unsigned w >= k."""
        n = len(w)
        if k <= 0:
            return 1
        if k >= (1 << n):
            return 0
        # Scan from the most significant bit.
        gt, eq = 0, 1
        for i in reversed(range(n)):
            kb = (k >> i) & 1
            if kb == 0:
                gt = self.or_(gt, self.and_(eq, w[i]))
                eq = self.and_(eq, w[i] ^ 1)
            else:
                eq = self.and_(eq, w[i])
        return self.or_(gt, eq)

    # --- output ---------------------------------------------------------------
    def _numbering(self):
        inputs = [i for i, n in enumerate(self.nodes) if n[0] == 'i']
        latches = [i for i, n in enumerate(self.nodes) if n[0] == 'l']
        ands = [i for i, n in enumerate(self.nodes) if n[0] == 'a']
        order = inputs + latches + ands
        var = {old: new + 1 for new, old in enumerate(order)}

        def lit(x):
            if x < 2:
                return x
            return 2 * var[x // 2 - 1] + (x & 1)

        return inputs, latches, ands, lit

    def lines(self):
        inputs, latches, ands, lit = self._numbering()
        M = len(self.nodes)
        hdr = [M, len(inputs), len(latches), len(self.outputs), len(ands)]
        if self.bads or self.constraints:
            hdr += [len(self.bads), len(self.constraints)]
        body = []
        for i in inputs:
            body.append([lit(2 * i + 2)])
        latch_rows = []
        for i in latches:
            cur = lit(2 * i + 2)
            nxt = lit(self.next.get(2 * i + 2, 2 * i + 2))
            init = self.nodes[i][1]
            row = [cur, nxt]
            if init is None:
                row.append(cur)
            elif init == 1:
                row.append(1)
            latch_rows.append(row)
        and_rows = []
        for i in ands:
            _, a, b = self.nodes[i]
            x, y = lit(a), lit(b)
            and_rows.append((lit(2 * i + 2), max(x, y), min(x, y)))
        return hdr, body, latch_rows, [lit(o) for o in self.outputs], \
            [lit(b) for b in self.bads], [lit(c) for c in self.constraints], and_rows

    def write_aag(self, path, comment):
        hdr, ins, latches, outs, bads, cons, ands = self.lines()
        out = ['aag ' + ' '.join(map(str, hdr))]
        out += [str(r[0]) for r in ins]
        out += [' '.join(map(str, r)) for r in latches]
        out += [str(o) for o in outs + bads + cons]
        out += ['%d %d %d' % a for a in ands]
        out += ['c', comment]
        path.write_text('\n'.join(out) + '\n')

    def write_aig(self, path, comment):
        hdr, _, latches, outs, bads, cons, ands = self.lines()
        data = bytearray(('aig ' + ' '.join(map(str, hdr)) + '\n').encode())
        for r in latches:
            data += (' '.join(map(str, r[1:])) + '\n').encode()
        for o in outs + bads + cons:
            data += ('%d\n' % o).encode()
        for lhs, r0, r1 in ands:
            for d in (lhs - r0, r0 - r1):
                while d >= 0x80:
                    data.append((d & 0x7f) | 0x80)
                    d >>= 7
                data.append(d)
        data += ('c\n' + comment + '\n').encode()
        path.write_bytes(bytes(data))


# --- families -----------------------------------------------------------------

def trivial_safe():
    g = Aig()
    g.bads.append(0)
    return g


def trivial_unsafe():
    g = Aig()
    g.bads.append(1)
    return g


def self_loop(init, bad_value):
    g = Aig()
    v = g.latch(init)
    g.set_next(v, v)
    g.bads.append(v if bad_value else v ^ 1)
    return g


def toggle_x():
    g = Aig()
    v = g.latch(None)
    g.set_next(v, v ^ 1)
    g.bads.append(v)
    return g


def counter(n, bad, enable=False):
    g = Aig()
    w = g.word_latches(n)
    en = g.input() if enable else 1
    for b, nb in zip(w, g.incr(w, en)):
        g.set_next(b, nb)
    g.bads.append(g.eq_const(w, bad))
    return g


def mod_counter(n, m, bad, enable=False):
    """Counts 0..m-1 and wraps; bad when the counter equals `bad`."""
    g = Aig()
    w = g.word_latches(n)
    en = g.input() if enable else 1
    inc = g.incr(w, en)
    wrap = g.and_(en, g.eq_const(w, m - 1))
    for b, nb in zip(w, inc):
        g.set_next(b, g.and_(nb, wrap ^ 1))
    g.bads.append(g.eq_const(w, bad))
    return g


def shift_register(n, bad_all_ones=True):
    g = Aig()
    x = g.input()
    w = g.word_latches(n)
    prev = x
    for b in w:
        g.set_next(b, prev)
        prev = b
    g.bads.append(g.all(w) if bad_all_ones else g.eq_const(w, 0) ^ 1)
    return g


def twin_shift(n, broken=False):
    """Two shift registers fed by one input; bad when they differ."""
    g = Aig()
    x = g.input()
    a = g.word_latches(n)
    b = g.word_latches(n)
    pa, pb = x, x
    for i in range(n):
        g.set_next(a[i], pa)
        g.set_next(b[i], pb)
        pa, pb = a[i], b[i]
    if broken:
        # the last stage of b samples the wrong tap
        g.set_next(b[n - 1], b[0])
    g.bads.append(g.any([g.xor(a[i], b[i]) for i in range(n)]))
    return g


def token_ring(n, bad_kind):
    """One-hot token moving around a ring when the input is high."""
    g = Aig()
    mv = g.input()
    w = [g.latch(1 if i == 0 else 0) for i in range(n)]
    for i in range(n):
        g.set_next(w[i], g.mux(mv, w[i - 1], w[i]))
    if bad_kind == 'two':
        pairs = [g.and_(w[i], w[j]) for i in range(n) for j in range(i + 1, n)]
        g.bads.append(g.any(pairs))
    elif bad_kind == 'none':
        g.bads.append(g.any(w) ^ 1)
    else:
        g.bads.append(w[bad_kind])
    return g


def mutex(with_turn):
    """Two processes idle -> trying -> critical -> idle; an input picks who moves.

    Each process is (t, c): trying and critical bits. A trying process may
    enter when the other is not critical and (with turn) it holds the turn or
    the other is not trying.
    """
    g = Aig()
    who = g.input()
    t0, c0, t1, c1 = g.latch(), g.latch(), g.latch(), g.latch()
    turn = g.latch()

    def step(me, t, c, ot, oc, my_turn):
        idle = g.and_(t ^ 1, c ^ 1)
        if with_turn:
            may = g.and_(oc ^ 1, g.or_(ot ^ 1, my_turn))
        else:
            may = 1  # broken: ignores the other process
        enter = g.and_(me, g.and_(t, may))
        leave = g.and_(me, c)
        start = g.and_(me, idle)
        nt = g.or_(start, g.and_(t, enter ^ 1))
        nc = g.or_(enter, g.and_(c, leave ^ 1))
        return nt, nc, leave

    nt0, nc0, l0 = step(who ^ 1, t0, c0, t1, c1, turn ^ 1)
    nt1, nc1, l1 = step(who, t1, c1, t0, c0, turn)
    g.set_next(t0, nt0)
    g.set_next(c0, nc0)
    g.set_next(t1, nt1)
    g.set_next(c1, nc1)
    g.set_next(turn, g.mux(l0, 1, g.mux(l1, 0, turn)))
    g.bads.append(g.and_(c0, c1))
    return g


def constrained_counter(n, bad, constrain):
    """Counter with an enable input; optionally constrained to never enable."""
    g = Aig()
    en = g.input()
    w = g.word_latches(n)
    for b, nb in zip(w, g.incr(w, en)):
        g.set_next(b, nb)
    if constrain:
        g.constraints.append(en ^ 1)
    g.bads.append(g.eq_const(w, bad))
    return g


def lfsr(n, taps, bad_zero=True):
    """Fibonacci LFSR from seed 1; never reaches 0 (SAFE) or reaches a state."""
    g = Aig()
    w = [g.latch(1 if i == 0 else 0) for i in range(n)]
    fb = 0
    for t in taps:
        fb = g.xor(fb, w[t])
    g.set_next(w[0], fb)
    for i in range(1, n):
        g.set_next(w[i], w[i - 1])
    g.bads.append(g.eq_const(w, 0) if bad_zero else g.eq_const(w, (1 << n) - 1))
    return g


def two_counters(n, skew):
    """Two counters stepping together; bad when they diverge (SAFE unless skew)."""
    g = Aig()
    en = g.input()
    a = g.word_latches(n)
    b = g.word_latches(n, skew)
    for x, nx in zip(a, g.incr(a, en)):
        g.set_next(x, nx)
    for x, nx in zip(b, g.incr(b, en)):
        g.set_next(x, nx)
    g.bads.append(g.any([g.xor(a[i], b[i]) for i in range(n)]))
    return g


def saturating(n, limit, bad):
    """Counter that stops at `limit`; bad when it equals `bad`."""
    g = Aig()
    en = g.input()
    w = g.word_latches(n)
    stop = g.eq_const(w, limit)
    for b, nb in zip(w, g.incr(w, g.and_(en, stop ^ 1))):
        g.set_next(b, nb)
    g.bads.append(g.eq_const(w, bad))
    return g


def guarded_counter(n, variant):
    """SAFE n-bit counter whose increment is guarded so it never passes a limit.

    variant 0: limit 2^(n-1); bad when any bit below the top is set with it.
    variant 1: limit 2^(n-1) + 2^(n-3) with an extra phase latch gating the
    increment; bad when the counter exceeds the limit.
    """
    g = Aig()
    en = g.input()
    w = g.word_latches(n)
    if variant == 0:
        limit = 1 << (n - 1)
        at = g.eq_const(w, limit)
        inc = g.incr(w, g.and_(en, at ^ 1))
        for b, nb in zip(w, inc):
            g.set_next(b, g.and_(nb, at ^ 1))
        g.bads.append(g.and_(w[n - 1], g.any(w[:n - 1])))
    else:
        limit = (1 << (n - 1)) + (1 << (n - 3))
        phase = g.latch()
        g.set_next(phase, g.xor(phase, en))
        at = g.ge_const(w, limit)
        inc = g.incr(w, g.and_(g.and_(en, phase), at ^ 1))
        for b, nb in zip(w, inc):
            g.set_next(b, g.mux(at, 0, nb))
        g.bads.append(g.ge_const(w, limit + 1))
    return g


def corpus():
    c = {}
    c['const_safe'] = (trivial_safe(), 'safe')
    c['const_unsafe'] = (trivial_unsafe(), 'unsafe')
    c['loop_safe'] = (self_loop(0, True), 'safe')
    c['loop_unsafe'] = (self_loop(1, True), 'unsafe')
    c['toggle_x'] = (toggle_x(), 'unsafe')
    c['counter3_bad7'] = (counter(3, 7), 'unsafe')
    c['counter4_bad15_en'] = (counter(4, 15, enable=True), 'unsafe')
    c['counter5_bad20'] = (counter(5, 20), 'unsafe')
    c['counter6_bad40_en'] = (counter(6, 40, enable=True), 'unsafe')
    c['mod3_6_safe'] = (mod_counter(3, 6, 7), 'safe')
    c['mod4_10_safe'] = (mod_counter(4, 10, 12, enable=True), 'safe')
    c['mod5_20_safe'] = (mod_counter(5, 20, 25), 'safe')
    c['mod6_40_safe'] = (mod_counter(6, 40, 50, enable=True), 'safe')
    c['mod4_10_unsafe'] = (mod_counter(4, 10, 9, enable=True), 'unsafe')
    c['mod6_40_unsafe'] = (mod_counter(6, 40, 39), 'unsafe')
    c['shift4_ones'] = (shift_register(4), 'unsafe')
    c['shift8_nonzero'] = (shift_register(8, bad_all_ones=False), 'unsafe')
    c['twin_shift3_safe'] = (twin_shift(3), 'safe')
    c['twin_shift5_safe'] = (twin_shift(5), 'safe')
    c['twin_shift4_unsafe'] = (twin_shift(4, broken=True), 'unsafe')
    c['ring4_two_safe'] = (token_ring(4, 'two'), 'safe')
    c['ring6_none_safe'] = (token_ring(6, 'none'), 'safe')
    c['ring5_reach_unsafe'] = (token_ring(5, 3), 'unsafe')
    c['mutex_turn_safe'] = (mutex(True), 'safe')
    c['mutex_broken_unsafe'] = (mutex(False), 'unsafe')
    c['constr_counter_safe'] = (constrained_counter(3, 3, True), 'safe')
    c['constr_counter_unsafe'] = (constrained_counter(3, 3, False), 'unsafe')
    c['lfsr4_safe'] = (lfsr(4, [2, 3]), 'safe')
    c['lfsr5_ones_unsafe'] = (lfsr(5, [2, 4], bad_zero=False), 'unsafe')
    c['two_counters4_safe'] = (two_counters(4, 0), 'safe')
    c['two_counters4_skew_unsafe'] = (two_counters(4, 1), 'unsafe')
    c['sat_counter5_safe'] = (saturating(5, 17, 18), 'safe')
    c['sat_counter5_unsafe'] = (saturating(5, 17, 17), 'unsafe')
    c['guarded6_safe'] = (guarded_counter(6, 0), 'safe')
    c['guarded7_phase_safe'] = (guarded_counter(7, 1), 'safe')
    return c


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument('--out', default=str(pathlib.Path(__file__).resolve().parent.parent / 'benchmarks'))
    args = ap.parse_args()
    root = pathlib.Path(args.out)
    for sub in ('corpus', 'aig', 'guarded'):
        (root / sub).mkdir(parents=True, exist_ok=True)

    manifest = {'corpus': {}, 'guarded': {}}
    for name, (g, expect) in sorted(corpus().items()):
        g.write_aag(root / 'corpus' / (name + '.aag'), name)
        g.write_aig(root / 'aig' / (name + '.aig'), name)
        manifest['corpus'][name] = expect
    for n in range(8, 15):
        for variant in (0, 1):
            name = 'guarded%d_v%d' % (n, variant)
            guarded_counter(n, variant).write_aag(root / 'guarded' / (name + '.aag'), name)
            manifest['guarded'][name] = 'safe'
    (root / 'manifest.json').write_text(json.dumps(manifest, indent=1, sort_keys=True) + '\n')


if __name__ == '__main__':
    main()
