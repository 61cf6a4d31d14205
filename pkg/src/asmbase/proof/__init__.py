from asmbase.proof import checker

OK = checker.OK
OK_MODULO = checker.OK_MODULO
LineReport = checker.LineReport
CheckReport = checker.CheckReport
check = checker.check
check_file = checker.check_file
load_derivation = checker.load_derivation
