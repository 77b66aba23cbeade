"""Argument vectors exercised as golden-file tests.

Each entry is ``(name, argv)``; the expected output lives in
``tests/golden/<name>.out`` with the wall-time field elided.  Paths are
relative to the repository root, which the tests use as working directory.
"""

LEUNG_M_2_MINUS_3 = "0.03500864673838784"

CASES = [
    # norms
    ("norm_dual_single", ["norm", "--space", "lorentz_dual", "--weights", "harmonic", "--vec", "a=1"]),
    ("norm_dual_pair", ["norm", "--space", "lorentz_dual", "--weights", "harmonic", "--vec", "a=2,b=1"]),
    ("norm_dual_ones3", ["norm", "--space", "lorentz_dual", "--vec", "a=1,b=1,c=1"]),
    ("norm_predual_single", ["norm", "--space", "lorentz_predual", "--vec", "a=1"]),
    ("norm_predual_ones3", ["norm", "--space", "lorentz_predual", "--vec", "a=1,b=1,c=1"]),
    ("norm_predual_weights", ["norm", "--space", "lorentz_predual", "--vec", "a=1,b=1/2,c=1/3"]),
    ("norm_predual_dual_flag", ["norm", "--space", "lorentz_predual", "--dual", "--vec", "a=2,b=1"]),
    ("norm_predual_explicit", ["norm", "--space", "lorentz_predual",
                               "--weights", "explicit:tests/golden/inputs/weights.txt", "--vec", "a=1,b=1"]),
    ("norm_counting", ["norm", "--space", "counting", "--vec", "a=-3,b=1/2"]),
    ("norm_float_mode", ["norm", "--space", "lorentz_predual", "--mode", "float", "--vec", "a=1,b=1,c=1"]),
    ("norm_space_file", ["norm", "--space", "file:tests/golden/inputs/lorentz.json", "--vec", "a=2,b=1"]),
    ("modular_nakano_linear", ["norm", "--space", "nakano", "--p", "linear", "--vec", "a=1/2,b=1/2",
                               "--modular-at", "1"]),
    ("modular_nakano_inf", ["norm", "--space", "nakano", "--vec", "a=2", "--modular-at", "1"]),
    ("modular_empty", ["norm", "--space", "nakano", "--p", "linear", "--vec=", "--modular-at", "1"]),
    ("luxemburg_square", ["norm", "--space", "orlicz", "--M", "power:2", "--vec", "a=3,b=4"]),
    ("luxemburg_linear", ["norm", "--space", "orlicz", "--M", "power:1", "--vec", "a=1,b=2,c=3"]),
    ("luxemburg_cube", ["norm", "--space", "orlicz", "--M", "power:3", "--vec", "a=2,b=2"]),
    ("luxemburg_nakano", ["norm", "--space", "nakano", "--vec", "a=1,b=1,c=1"]),
    ("inverse_square", ["norm", "--space", "orlicz", "--M", "power:2", "--inverse", "1/4"]),
    ("inverse_exp_reciprocal", ["norm", "--space", "orlicz", "--M", "exp_reciprocal", "--inverse", "1/50"]),
    ("inverse_leung", ["norm", "--space", "orlicz", "--M", "leung", "--inverse", LEUNG_M_2_MINUS_3]),
    ("mu_lambda_lorentz", ["mu-lambda", "--space", "lorentz_predual", "--n", "3"]),
    ("mu_lambda_orlicz", ["mu-lambda", "--space", "orlicz", "--M", "power:2", "--n", "4"]),
    ("mu_lambda_counting", ["mu-lambda", "--space", "counting", "--n", "7"]),
    # range profiles, rho and theta
    ("profile_four", ["profile", "--vec", "a=3,b=2,c=2,d=1"]),
    ("profile_empty", ["profile", "--vec="]),
    ("profile_tie", ["profile", "--vec", "a=5,b=5"]),
    ("theta_counting", ["theta", "--provider", "counting", "--vec", "a=3,b=2,c=2,d=1"]),
    ("theta_symmetric", ["theta", "--provider", "symmetric", "--vec", "a=2,b=1"]),
    ("theta_empty", ["theta", "--provider", "counting", "--vec="]),
    ("rho_counting_4", ["theta", "--provider", "counting", "--vec", "a=1,b=1,c=1,d=1"]),
    ("rho_symmetric_2", ["theta", "--provider", "symmetric", "--vec", "a=1,b=1"]),
    ("theta_table_provider", ["theta", "--provider", "table:tests/golden/inputs/rho.txt", "--vec", "a=2,b=1"]),
    ("theta_as_table", ["theta", "--provider", "counting", "--vec", "a=3,b=2,c=2,d=1", "--format", "table"]),
    # approximating functionals
    ("omega_level2", ["approx", "omega", "--vec", "a=3,b=2,c=2,d=1", "--k", "2"]),
    ("omega_sign", ["approx", "omega", "--vec", "a=-2", "--k", "1"]),
    ("omega_tie", ["approx", "omega", "--vec", "a=5,b=5", "--k", "1"]),
    ("h_pair_m1", ["approx", "h", "--vec", "a=2,b=1", "--m", "1"]),
    ("h_pair_m2", ["approx", "h", "--vec", "a=2,b=1", "--m", "2"]),
    ("h_four_m1", ["approx", "h", "--vec", "a=3,b=2,c=2,d=1", "--m", "1"]),
    ("g_pair", ["approx", "g", "--vec", "a=2,b=1", "--m", "1", "--n", "2"]),
    ("g_four", ["approx", "g", "--vec", "a=3,b=2,c=2,d=1", "--m", "1", "--n", "2"]),
    ("g_past_levels", ["approx", "g", "--vec", "a=2,b=1", "--m", "2", "--n", "3"]),
    ("j_pair", ["approx", "j", "--vec", "a=2,b=1", "--m", "1", "--n", "2"]),
    ("j_four", ["approx", "j", "--vec", "a=3,b=2,c=2,d=1", "--m", "1", "--n", "2"]),
    ("j_past_levels", ["approx", "j", "--vec", "a=2,b=1", "--m", "3", "--n", "4"]),
    ("weights_four", ["approx", "weights", "--vec", "a=3,b=2,c=2,d=1", "--m", "1"]),
    ("weights_h_branch", ["approx", "weights", "--vec", "a=2,b=1", "--m", "2"]),
    ("weights_pair", ["approx", "weights", "--vec", "a=2,b=1", "--m", "1"]),
    ("reconstruct_four", ["approx", "reconstruct", "--vec", "a=3,b=2,c=2,d=1", "--m", "1"]),
    ("reconstruct_empty", ["approx", "reconstruct", "--vec=", "--m", "1"]),
    ("reconstruct_symmetric", ["approx", "reconstruct", "--provider", "symmetric", "--vec", "a=2,b=1",
                               "--m", "1"]),
    ("tail_four", ["approx", "tail", "--vec", "a=3,b=2,c=2,d=1", "--m", "1"]),
    ("tail_last_level", ["approx", "tail", "--vec", "a=3,b=2,c=2,d=1", "--m", "3"]),
    ("tail_symmetric", ["approx", "tail", "--provider", "symmetric", "--vec", "a=2,b=1", "--m", "1"]),
    # condition lab
    ("check_thm44", ["check", "thm44", "--space", "lorentz_predual", "--N", "1000"]),
    ("check_cor46", ["check", "cor46", "--space", "lorentz_predual", "--N", "1000"]),
    ("check_eq5", ["check", "orlicz_eq5", "--M", "exp_reciprocal", "--extension", "formula",
                   "--K", "2", "--N", "100"]),
    ("check_eq5_csv", ["check", "orlicz_eq5", "--M", "exp_reciprocal", "--extension", "formula",
                       "--K", "2", "--N", "100", "--format", "csv"]),
    ("check_eq5_scan", ["check", "orlicz_eq5", "--M", "exp_reciprocal", "--extension", "formula",
                        "--scan-K", "--N", "200"]),
    ("check_leung_ratio_csv", ["check", "leung_ratio", "--M", "leung", "--K", "2", "--N", "200",
                               "--format", "csv"]),
    ("check_nakano_prop_table", ["check", "nakano_prop", "--N", "1000", "--format", "table"]),
    ("check_leung_M_1", ["check", "leung_M", "--j", "1", "--L", "61"]),
    ("check_leung_M_20", ["check", "leung_M", "--j", "20", "--L", "80"]),
    ("check_nakano_lambda", ["check", "nakano_lambda", "--N", "200"]),
    ("builtin_lorentz_harmonic", ["check", "--builtin", "lorentz_harmonic"]),
    ("builtin_nakano_loglog", ["check", "--builtin", "nakano_loglog"]),
    ("builtin_orlicz_exp_reciprocal", ["check", "--builtin", "orlicz_exp_reciprocal"]),
    ("builtin_leung_counterexample", ["check", "--builtin", "leung_counterexample"]),
    # ordinals and trees
    ("tree_q_w2_5", ["tree", "q", "--eta", "w*2+5"]),
    ("tree_q_7", ["tree", "q", "--eta", "7"]),
    ("tree_q_big", ["tree", "q", "--eta", "w^2*3+w*4+7"]),
    ("tree_member_5", ["tree", "member", "--alpha", "1", "--node", "[5]"]),
    ("tree_member_5_0", ["tree", "member", "--alpha", "1", "--node", "[5, 0]"]),
    ("tree_member_deep", ["tree", "member", "--alpha", "4", "--node", "[w*3+1, w*2+7, 5]"]),
    ("tree_rank_leaf", ["tree", "rank", "--alpha", "4", "--node", "[w*3+1, w*2+7, 5]"]),
    ("tree_rank_root", ["tree", "rank", "--alpha", "w*4", "--node", "[w*3+1]"]),
    ("tree_rank_m1", ["tree", "rank", "--alpha", "1", "--node", "[9]"]),
    ("tree_isolated_3", ["tree", "isolated", "--alpha", "4", "--node", "[w*3+1]", "--xi", "3"]),
    ("tree_isolated_2", ["tree", "isolated", "--alpha", "4", "--node", "[w*3+1]", "--xi", "2"]),
    ("tree_isolated_m1", ["tree", "isolated", "--alpha", "1", "--node", "[5]", "--xi", "0"]),
    ("tree_wedge_in", ["tree", "wedge", "--alpha", "4", "--base", "[w*3+1]", "--exclude", "0,w",
                       "--node", "[w*3+1, w*2]"]),
    ("tree_wedge_out", ["tree", "wedge", "--alpha", "4", "--base", "[w*3+1]", "--exclude", "0,w",
                        "--node", "[w*3+1, 0]"]),
    ("tree_wedge_base", ["tree", "wedge", "--alpha", "4", "--base", "[w*3+1]", "--exclude", "0,w",
                         "--node", "[w*3+1]"]),
    ("tree_children", ["tree", "children", "--alpha", "4", "--node", "[w*3+1]", "--betas", "2",
                       "--budget", "2"]),
    ("tree_children_leaf", ["tree", "children", "--alpha", "4", "--node", "[5]", "--budget", "3"]),
    ("tree_children_ranks", ["tree", "children", "--alpha", "4", "--node", "[w*3+1]", "--betas", "0,1,2",
                             "--budget", "2", "--format", "table"]),
    ("tree_transport_t0", ["tree", "transport", "--alpha", "2", "--s", "[w, 0]", "--u", "[w]",
                           "--points", "[w, 0];[w, 1];[w, 2];[w, 3];[w, 4]"]),
    ("tree_transport_t3", ["tree", "transport", "--alpha", "2", "--s", "[w, 3]", "--u", "[w]",
                           "--points", "[w, 0];[w, 1];[w, 2];[w, 3];[w, 4]"]),
    ("tree_transport_outside", ["tree", "transport", "--alpha", "2", "--s", "[5]", "--u", "[w]",
                                "--points", "[w, 0];[w, 1];[w, 2];[w, 3];[w, 4]"]),
    ("tree_height_1", ["tree", "height", "--alpha", "1"]),
    ("tree_height_2", ["tree", "height", "--alpha", "2"]),
    ("tree_height_3", ["tree", "height", "--alpha", "3"]),
    ("tree_height_w", ["tree", "height", "--alpha", "w"]),
    # errors
    ("error_unknown_subcommand", ["frobnicate"]),
    ("error_bad_rational", ["norm", "--space", "counting", "--vec", "a=1/0"]),
    ("error_bad_ordinal", ["tree", "q", "--eta", "w+w^2"]),
    ("error_csv_non_series", ["theta", "--vec", "a=1", "--format", "csv"]),
    ("error_not_member", ["tree", "rank", "--alpha", "1", "--node", "[5, 0]"]),
]

EXIT_CODES = {name: 2 for name, _ in CASES if name.startswith("error_")}
