from asmbase.semantics import evaluation, families, runs, valuation

Valuation = valuation.Valuation
EMPTY_VALUATION = valuation.EMPTY_VALUATION

eval_term = evaluation.eval_term
eval_guard = evaluation.eval_guard

delta = families.delta
successors = families.successors
is_defined = families.is_defined
brute_force_delta = families.brute_force_delta

RunReport = runs.RunReport
run = runs.run
sorted_states = runs.sorted_states
state_key = runs.state_key
