from asmbase.parser import asm_parser, state_file

# Rules, formulas and files of the rule language
parse_rule = asm_parser.parse_rule
parse_lformula = asm_parser.parse_lformula
parse_guard = asm_parser.parse_guard
parse_term = asm_parser.parse_term
parse_machine = asm_parser.parse_machine
parse_formula_file = asm_parser.parse_formula_file
parse_derivation = asm_parser.parse_derivation

# State files
parse_state = state_file.parse_state
read_state = state_file.read_state
format_state = state_file.format_state
parse_update_set = state_file.parse_update_set
parse_binding = state_file.parse_binding
