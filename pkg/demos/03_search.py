"""Enumerate tight arrays by brute force with pruning.  Set DRGT_THREADS to
use several processes."""

import time

from drgtight import search

# %% diameter 3: small boxes finish instantly
res = search.run_search(search.SearchConfig(d=3, max_k=8))
print(f"d=3, k<=8: {res.candidates} candidates")
for arr in res.arrays():
    print("  ", arr)

# %% diameter 4 up to k = 16 finds J(8,4) and the array of 3.Sym(7) among others
t0 = time.perf_counter()
res = search.run_search(search.SearchConfig(d=4, max_k=16))
print(f"\nd=4, k<=16: {res.candidates} candidates in {time.perf_counter() - t0:.2f}s")
print(res.to_ndjson(), end="")

# %% arithmetic tightness does not mean a graph exists; antipodality narrows things down
res = search.run_search(search.SearchConfig(d=4, max_k=16, require_antipodal=True))
print("\nantipodal only:", [str(a) for a in res.arrays()])
