from asmbase.logic import domains, evaluator, lemmas, predicates, sampling, schemas, validation

# Predicate-sort domains
triples = domains.triples
quadruples = domains.quadruples
enumerate_domain = domains.enumerate_domain
domain_size = domains.domain_size

# Evaluation
Evaluator = evaluator.Evaluator
evaluate = evaluator.evaluate
holds = evaluator.holds
closure = evaluator.closure

# Derived predicates
con_uset = predicates.con_uset
con = predicates.con
wcon = predicates.wcon
scon = predicates.scon
joinable = predicates.joinable
compatible = predicates.compatible
rules_equivalent = predicates.rules_equivalent
con_uset_formula = predicates.con_uset_formula
con_formula = predicates.con_formula
wcon_formula = predicates.wcon_formula
scon_formula = predicates.scon_formula
joinable_formula = predicates.joinable_formula
empty_formula = predicates.empty_formula
box = predicates.box
diamond = predicates.diamond

# Schemas
Schema = schemas.Schema
Meta = schemas.Meta
SCHEMAS = schemas.SCHEMAS
AXIOM_IDS = schemas.AXIOM_IDS
RULE_IDS = schemas.RULE_IDS
MUTATION_IDS = schemas.MUTATION_IDS
get_schema = schemas.get_schema
instantiate_schema = schemas.instantiate_schema
instantiate_rule = schemas.instantiate_rule
upd_expansion = schemas.upd_expansion

# Validation
Sampler = sampling.Sampler
PROFILES = sampling.PROFILES
SchemaReport = validation.SchemaReport
Counterexample = validation.Counterexample
LEMMA_GENERATORS = validation.LEMMA_GENERATORS
POINTWISE_RULES = validation.POINTWISE_RULES
validate_schema = validation.validate_schema
validate_lemma = validation.validate_lemma
validate_all = validation.validate_all
