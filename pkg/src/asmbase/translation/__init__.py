from asmbase.translation import flatten, modal_elimination, pipeline, upd_elimination

flatten_atoms = flatten.flatten_atoms
is_flat_atom = flatten.is_flat_atom
eliminate_upd = upd_elimination.eliminate_upd
has_upd = upd_elimination.has_upd
eliminate_modal = modal_elimination.eliminate_modal
is_lin = pipeline.is_lin
TranslationSummary = pipeline.TranslationSummary
translate = pipeline.translate
to_lin = pipeline.to_lin
