from asmbase.syntax import analysis, derivations, formulas, printer, rules, sorts, terms

# Terms
Var = terms.Var
App = terms.App
point = terms.point
algo = terms.algo
pred1 = terms.pred1
pred2 = terms.pred2
sort_of = terms.sort_of

# Formulas
Eq = formulas.Eq
Not = formulas.Not
And = formulas.And
Forall = formulas.Forall
Mem1 = formulas.Mem1
Mem2 = formulas.Mem2
Upd = formulas.Upd
Box = formulas.Box
TOP = formulas.TOP
BOTTOM = formulas.BOTTOM
neq = formulas.neq
conj = formulas.conj
disj = formulas.disj
implies = formulas.implies
iff = formulas.iff
exists = formulas.exists
forall_all = formulas.forall_all
exists_all = formulas.exists_all
conjuncts = formulas.conjuncts

# Rules
UpdateRule = rules.UpdateRule
Cond = rules.Cond
ForallRule = rules.ForallRule
Choose = rules.Choose
Par = rules.Par
Seq = rules.Seq
Machine = rules.Machine
par = rules.par
seq = rules.seq
is_deterministic = rules.is_deterministic

# Analysis
free_variables = analysis.free_variables
is_closed = analysis.is_closed
is_static = analysis.is_static
is_pure = analysis.is_pure
substitute = analysis.substitute
alpha_equivalent = analysis.alpha_equivalent
canonical_names = analysis.canonical_names
node_count = analysis.node_count
FreshNames = analysis.FreshNames

# Sort checking
check_guard = sorts.check_guard
check_formula = sorts.check_formula
check_rule = sorts.check_rule

# Printing
format_term = printer.format_term
format_formula = printer.format_formula
format_rule = printer.format_rule
format_machine = printer.format_machine

# Derivations
Derivation = derivations.Derivation
Line = derivations.Line
Hypothesis = derivations.Hypothesis
AxiomUse = derivations.AxiomUse
RuleUse = derivations.RuleUse
Certificate = derivations.Certificate
