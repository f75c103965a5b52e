#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cqsim/channel_file.hpp"
#include "cqsim/experiment.hpp"
#include "cqsim/noise.hpp"

using namespace cqsim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("mode names round-trip") {
    for (Mode m : {Mode::grover, Mode::cqs, Mode::pseudopure, Mode::mad, Mode::speedup}) {
        CHECK(parse_mode(to_string(m)) == m);
    }
    CHECK_FALSE(parse_mode("bogus").has_value());
}

TEST_CASE("validate_config rejects each bad configuration") {
    ExperimentConfig c;
    c.mode = Mode::grover;
    c.qubits = 2;
    CHECK_FALSE(validate_config(c).has_value());

    c.qubits = 0;
    CHECK(validate_config(c).has_value());
    c.qubits = 2;

    c.epsilons = {0.5};
    CHECK(validate_config(c).has_value()); // epsilon outside pseudopure mode
    c.mode = Mode::pseudopure;
    CHECK_FALSE(validate_config(c).has_value());
    c.epsilons = {1.5};
    CHECK(validate_config(c).has_value());
    c.epsilons.clear();

    c.mode = Mode::mad;
    CHECK(validate_config(c).has_value()); // channel file missing
    c.channel_path = "somewhere.channel";
    CHECK_FALSE(validate_config(c).has_value());
    c.mode = Mode::cqs;
    CHECK(validate_config(c).has_value()); // channel outside mad mode
    c.channel_path.clear();

    c.output_path.clear();
    CHECK(validate_config(c).has_value());
}

TEST_CASE("grover sweep rows carry the exact query counts and formulas") {
    ExperimentConfig c;
    c.mode = Mode::grover;
    c.qubits = 4;
    const ExperimentOutput out = execute(c);
    // default sweep is 0..2k*, and k*(n=4) = 3
    REQUIRE(out.rows.size() == 7);
    for (std::uint64_t k = 0; k < out.rows.size(); ++k) {
        const ResultRow& row = out.rows[k];
        CHECK(row.k == k);
        CHECK(row.local_queries == k);
        CHECK(row.global_queries == 0);
        CHECK_FALSE(row.epsilon.has_value());
        CHECK(std::abs(row.p_simulated - row.p_closed_form) < 1e-12);
        CHECK_FALSE(row.discrepancy_flag);
    }
}

TEST_CASE("cqs sweep rows match fresh runs and their ledgers") {
    ExperimentConfig c;
    c.mode = Mode::cqs;
    c.qubits = 3;
    c.k_max = 6;
    const ExperimentOutput out = execute(c);
    REQUIRE(out.rows.size() == 7);
    const CqsProblem p = make_cqs_problem(3, BasisIndex{7}, BasisIndex{7});
    for (const ResultRow& row : out.rows) {
        const CqsRun fresh = cqs_run(p, row.k);
        CHECK(fresh.ledger.local_oracle_calls == row.local_queries);
        CHECK(fresh.ledger.global_oracle_calls == row.global_queries);
        CHECK(row.p_simulated ==
              doctest::Approx(success_probability(fresh.state, p.joint_target()))
                  .epsilon(1e-14));
        CHECK(std::abs(row.p_simulated - row.p_closed_form) < 1e-10);
    }
}

TEST_CASE("pseudopure sweep flags every impure row and no pure row") {
    ExperimentConfig c;
    c.mode = Mode::pseudopure;
    c.qubits = 2;
    c.k_max = 2;
    const ExperimentOutput out = execute(c);
    REQUIRE(out.rows.size() == 5 * 3);
    for (const ResultRow& row : out.rows) {
        REQUIRE(row.epsilon.has_value());
        CHECK(std::abs(row.p_simulated - row.p_closed_form) < 1e-10);
        CHECK(row.discrepancy_flag == (*row.epsilon < 1.0));
    }
}

TEST_CASE("mad sweep publishes the survival value only at the optimum") {
    TempFile tmp("test_mad_sweep.channel");
    {
        std::ofstream out(tmp.path);
        out << "d=16\neta 15 0 0.3\n";
    }
    ExperimentConfig c;
    c.mode = Mode::mad;
    c.qubits = 2;
    c.k_max = 3;
    c.channel_path = tmp.path;
    const ExperimentOutput out = execute(c);
    REQUIRE(out.rows.size() == 4);
    for (const ResultRow& row : out.rows) {
        CHECK(std::abs(row.p_simulated - row.p_closed_form) < 1e-10);
        CHECK(row.p_paper_formula.has_value() == (row.k == 1));
    }
    CHECK(out.rows[1].p_simulated == doctest::Approx(0.7).epsilon(1e-12));
    CHECK_FALSE(out.rows[1].discrepancy_flag);
}

TEST_CASE("mad mode rejects a channel of the wrong size") {
    TempFile tmp("test_mad_badsize.channel");
    {
        std::ofstream out(tmp.path);
        out << "d=8\n";
    }
    ExperimentConfig c;
    c.mode = Mode::mad;
    c.qubits = 2;
    c.channel_path = tmp.path;
    CHECK_THROWS_AS(execute(c), ChannelFileError);
}

TEST_CASE("csv output is fixed-format with a header, even when empty") {
    std::ostringstream empty;
    write_csv({}, empty);
    CHECK(empty.str() ==
          "mode,n,k,epsilon,p_simulated,p_closed_form,p_paper_formula,"
          "local_queries,global_queries,discrepancy_flag\n");

    ExperimentConfig c;
    c.mode = Mode::grover;
    c.qubits = 1;
    c.k_max = 2;
    std::ostringstream body;
    write_csv(execute(c).rows, body);
    CHECK(body.str() ==
          "mode,n,k,epsilon,p_simulated,p_closed_form,p_paper_formula,"
          "local_queries,global_queries,discrepancy_flag\n"
          "grover,1,0,,0.5,0.5,0.5,0,0,0\n"
          "grover,1,1,,0.5,0.5,0.5,1,0,0\n"
          "grover,1,2,,0.5,0.5,0.5,2,0,0\n");
}

TEST_CASE("run_experiment maps failures to the documented exit codes") {
    std::ostringstream report;

    ExperimentConfig ok;
    ok.mode = Mode::cqs;
    ok.qubits = 2;
    ok.output_path = "test_exit_ok.csv";
    TempFile guard(ok.output_path);
    CHECK(run_experiment(ok, report) == exit_status::ok);

    ExperimentConfig bad_n = ok;
    bad_n.qubits = 0;
    CHECK(run_experiment(bad_n, report) == exit_status::invalid_config);

    ExperimentConfig too_big = ok;
    too_big.mode = Mode::pseudopure;
    too_big.qubits = 7;
    CHECK(run_experiment(too_big, report) == exit_status::cap_exceeded);

    ExperimentConfig bad_channel = ok;
    bad_channel.mode = Mode::mad;
    bad_channel.channel_path = "missing.channel";
    CHECK(run_experiment(bad_channel, report) == exit_status::invalid_channel);
}

TEST_CASE("harness reruns are byte-identical regardless of seed") {
    ExperimentConfig c;
    c.mode = Mode::cqs;
    c.qubits = 3;
    c.output_path = "test_det_a.csv";
    TempFile a(c.output_path);
    std::ostringstream sink;
    REQUIRE(run_experiment(c, sink) == exit_status::ok);

    c.output_path = "test_det_b.csv";
    c.seed = 12345;
    TempFile b(c.output_path);
    REQUIRE(run_experiment(c, sink) == exit_status::ok);

    CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("emit_report summarizes the audit and the speed-up table") {
    ExperimentConfig c;
    c.mode = Mode::speedup;
    c.qubits = 5;
    const ExperimentOutput out = execute(c);
    std::ostringstream report;
    emit_report(out, report);
    const std::string text = report.str();
    CHECK(text.find("closed-form audit") != std::string::npos);
    CHECK(text.find("PASS") != std::string::npos);
    CHECK(text.find("speed-up scaling") != std::string::npos);
    CHECK(text.find("pi/4") != std::string::npos);
}
