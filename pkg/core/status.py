EXIT_0_OK = 0
EXIT_1_USAGE = 1
EXIT_2_INPUT_ERROR = 2
EXIT_3_SOLVER_ERROR = 3
EXIT_10_NO_PLAN = 10
