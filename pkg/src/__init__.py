"""
hyperaco

MMAS* ant colony optimisation for minimum-weight hypergraph edge cover,
with exact oracles, planted-instance generators, runtime bounds and an
experiment harness.
"""
