# Copyright 2026 The skiptree Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================
"""Writes the small synthetic corpus in data/corpus.jsonl.

Statements are random well-typed boolean terms in the S-expression encoding
used by the toolkit. The output is a pure function of --seed.

  python3 tools/make_corpus.py --seed 2026 > data/corpus.jsonl
"""

import argparse
import json
import random

BOOL = "(bool)"
NUM = "(num)"
REAL = "(real)"
LIST_NUM = "(list (num))"


def fun(a, b):
  return "(fun %s %s)" % (a, b)


BINOPS = {
    "/\\": (BOOL, BOOL, BOOL),
    "\\/": (BOOL, BOOL, BOOL),
    "==>": (BOOL, BOOL, BOOL),
    "+": (NUM, NUM, NUM),
    "*": (NUM, NUM, NUM),
    "-": (NUM, NUM, NUM),
    "<=": (NUM, NUM, BOOL),
    "<": (NUM, NUM, BOOL),
    "real_add": (REAL, REAL, REAL),
    "real_mul": (REAL, REAL, REAL),
    "real_le": (REAL, REAL, BOOL),
    "CONS": (NUM, LIST_NUM, LIST_NUM),
    "APPEND": (LIST_NUM, LIST_NUM, LIST_NUM),
}
UNOPS = {
    "~": (BOOL, BOOL),
    "SUC": (NUM, NUM),
    "real_neg": (REAL, REAL),
    "real_of_num": (NUM, REAL),
    "LENGTH": (LIST_NUM, NUM),
    "EVEN": (NUM, BOOL),
}
CONSTS = {BOOL: ["T", "F"], NUM: ["_0", "_1"], REAL: ["real_zero"],
          LIST_NUM: ["NIL"]}
VARS = {BOOL: "pqr", NUM: "mnk", REAL: "xyz", LIST_NUM: "lst"}
TYPES = [BOOL, NUM, REAL, LIST_NUM]


# Whole statements stay within the default input limit, so that no
# generated input needs truncation.
MAX_TOKENS = 1024


def token_count(sexpr):
  return 2 * sexpr.count("(") + len(sexpr.replace("(", " ").replace(")", " ").split())


def var(ty, name):
  return "(v %s %s)" % (ty, name)


def const(ty, name):
  return "(c %s %s)" % (ty, name)


def app(f, x):
  return "(a %s %s)" % (f, x)


def binop(op, l, r):
  a, b, c = BINOPS[op]
  return app(app(const(fun(a, fun(b, c)), op), l), r)


def eq(ty, l, r):
  return app(app(const(fun(ty, fun(ty, BOOL)), "="), l), r)


def quant(q, ty, name, body):
  return app(const(fun(fun(ty, BOOL), BOOL), q),
             "(l %s %s)" % (var(ty, name), body))


class Gen(object):

  def __init__(self, rng):
    self.rng = rng

  def leaf(self, ty, env):
    names = [n for n, t in env if t == ty]
    if names and self.rng.random() < 0.7:
      return var(ty, self.rng.choice(names))
    if self.rng.random() < 0.5:
      return var(ty, self.rng.choice(VARS[ty]))
    return const(ty, self.rng.choice(CONSTS[ty]))

  def term(self, ty, size, env):
    """A term of type `ty` with roughly `size` leaves."""
    if size <= 1:
      return self.leaf(ty, env)
    rng = self.rng
    if ty == BOOL:
      choice = rng.random()
      if choice < 0.15:
        q = rng.choice(["!", "?"])
        vty = rng.choice(TYPES)
        name = rng.choice(VARS[vty]) + str(len(env))
        return quant(q, vty, name, self.term(BOOL, size - 1, env + [(name, vty)]))
      if choice < 0.35:
        vty = rng.choice([NUM, REAL, LIST_NUM, BOOL])
        l = rng.randint(1, size - 1)
        return eq(vty, self.term(vty, l, env), self.term(vty, size - l, env))
      if choice < 0.45 and size < 6:
        op = rng.choice(["~", "EVEN"])
        arg = UNOPS[op][0]
        return app(const(fun(arg, BOOL), op), self.term(arg, size - 1, env))
    ops = [op for op, sig in BINOPS.items() if sig[2] == ty]
    if ty == BOOL and rng.random() < 0.5:
      ops = ["/\\", "==>", "\\/"]
    unops = [op for op, sig in UNOPS.items() if sig[1] == ty]
    if unops and rng.random() < 0.15:
      op = rng.choice(unops)
      arg = UNOPS[op][0]
      return app(const(fun(arg, ty), op), self.term(arg, size - 1, env))
    op = rng.choice(ops)
    a, b, _ = BINOPS[op]
    l = rng.randint(1, size - 1)
    return binop(op, self.term(a, l, env), self.term(b, size - l, env))


def main():
  parser = argparse.ArgumentParser()
  parser.add_argument("--seed", type=int, default=2026)
  args = parser.parse_args()
  rng = random.Random(args.seed)
  gen = Gen(rng)
  # (count, leaves) buckets: small statements for exhaustive checks, large
  # ones so that sampling without replacement has room to differ.
  plan = [(7, (1, 2)), (7, (3, 6)), (6, (8, 20)), (24, (34, 44))]
  n = 0
  for count, (lo, hi) in plan:
    for _ in range(count):
      size = rng.randint(lo, hi)
      body = gen.term(BOOL, size, [])
      while token_count(body) + 3 > MAX_TOKENS:
        size -= 1
        body = gen.term(BOOL, size, [])
      split = rng.choices(["train", "valid", "test"], [0.7, 0.2, 0.1])[0]
      tag = "goal" if rng.random() < 0.2 else "theorem"
      print(json.dumps({"id": "syn%03d" % n, "split": split, "tag": tag,
                        "sexpr": body}))
      n += 1
  # Hand-written statements with known top-level structure.
  p, q, r = (var(BOOL, c) for c in "pqr")
  x = var("A", "x")
  fixed = [
      ("imp_conj", "valid",
       binop("/\\", binop("==>", p, q),
             binop("==>", r, binop("==>", var(BOOL, "s"), var(BOOL, "t"))))),
      ("eq_self", "valid",
       quant("!", BOOL, "b", eq(BOOL, var(BOOL, "b"),
                                eq(BOOL, var(BOOL, "b"), const(BOOL, "T"))))),
      ("x_eq_x", "valid",
       app(app(const("(fun (A) (fun (A) (bool)))", "="), x), x)),
      ("sub_add", "valid",
       quant("!", NUM, "m", quant("!", NUM, "n", binop(
           "==>", binop("<=", var(NUM, "n"), var(NUM, "m")),
           eq(NUM, binop("+", binop("-", var(NUM, "m"), var(NUM, "n")),
                         var(NUM, "n")), var(NUM, "m")))))),
      ("lambda_id", "train",
       eq(fun("A", "A"), "(l (v A y) (v A y))", "(l (v A z) (v A z))")),
  ]
  for name, split, body in fixed:
    print(json.dumps({"id": name, "split": split, "tag": "theorem",
                      "sexpr": body}))


if __name__ == "__main__":
  main()
