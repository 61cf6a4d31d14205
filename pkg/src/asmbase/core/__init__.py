from asmbase.core import signature, state, updates

# Signatures
Sort = signature.Sort
Kind = signature.Kind
FunctionSymbol = signature.FunctionSymbol
Signature = signature.Signature

# States
State = state.State
apply = state.apply

# Updates
Atom = updates.Atom
Location = updates.Location
Update = updates.Update
TaggedUpdate = updates.TaggedUpdate
EMPTY = updates.EMPTY
EMPTY_FAMILY = updates.EMPTY_FAMILY
update_set = updates.update_set
tagged_update_set = updates.tagged_update_set
is_consistent = updates.is_consistent
seq_merge = updates.seq_merge
project = updates.project
untag = updates.untag
format_update_set = updates.format_update_set
sorted_updates = updates.sorted_updates
sorted_family = updates.sorted_family
