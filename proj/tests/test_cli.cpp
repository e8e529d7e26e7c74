#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qdos/circuit.hpp"
#include "qdos/complex_matrix.hpp"
#include "qdos/json_io.hpp"
#include "qdos/synth.hpp"

namespace {

struct RunResult {
    int code;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    const std::string out_path = "cli_stdout.txt";
    const std::string cmd =
        std::string(QDOS_BIN) + " " + args + " > " + out_path + " 2> cli_stderr.txt";
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = rc == -1 ? -1 : WEXITSTATUS(rc);
    r.out = slurp(out_path);
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

void write_circuit(const std::string& path, const qdos::Circuit& c) {
    write_file(path, qdos::circuit_to_json(c).dump());
}

void write_matrix(const std::string& path, const qdos::ComplexMatrix& m) {
    std::ofstream out(path);
    qdos::write_matrix_text(out, m);
}

}  // namespace

TEST_CASE("synth subcommand") {
    RunResult r = run("synth su2 --alpha 0 --delta 0 --gamma 0 --out c.json --cert cert.json");
    CHECK(r.code == 0);
    const nlohmann::json cert = nlohmann::json::parse(slurp("cert.json"));
    CHECK(cert["residual"].get<double>() <= 1e-15);
    const qdos::Circuit c = qdos::circuit_from_json(nlohmann::json::parse(slurp("c.json")));
    CHECK(c.ops.size() == 5);

    r = run("synth diag --n 3 --phis 0.1,0.2,0.3,0.4,0.5,0.6,0.7 --out d.json --cert dc.json");
    CHECK(r.code == 0);
    const qdos::Circuit dc = qdos::circuit_from_json(nlohmann::json::parse(slurp("d.json")));
    CHECK(dc.ops.size() == 7);  // seven phase slots

    CHECK(run("synth state --random --n 2 --seed 7 --out s.json --cert sc.json").code == 0);
    CHECK(nlohmann::json::parse(slurp("sc.json"))["residual"].get<double>() <= 1e-9);

    CHECK(run("synth u4 --random --seed 3 --out u.json --cert uc.json").code == 0);
    CHECK(run("synth cphase --delta 90 --degrees --out p.json --cert pc.json").code == 0);
    const qdos::Circuit pc = qdos::circuit_from_json(nlohmann::json::parse(slurp("p.json")));
    CHECK(pc.ops[0].gate.angle == doctest::Approx(qdos::kPi / 4));

    CHECK(run("synth warp").code == 2);
    CHECK(run("synth diag --n 3 --phis 0.1,0.2").code == 2);
    CHECK(run("synth cu").code == 2);  // no --matrix and no --random
}

TEST_CASE("render subcommand") {
    qdos::Circuit cn(2);
    cn.add(qdos::Gate::cnot(), {0, 1});
    write_circuit("cnot.json", cn);

    RunResult svg = run("render cnot.json --format svg --out cnot.svg");
    CHECK(svg.code == 0);
    const std::string doc = slurp("cnot.svg");
    std::size_t states = 0, pos = 0;
    while ((pos = doc.find("class=\"state\"", pos)) != std::string::npos) {
        ++states;
        pos += 1;
    }
    CHECK(states == 4);

    // Byte-identical on repeat.
    CHECK(run("render cnot.json --format svg --out cnot2.svg").code == 0);
    CHECK(slurp("cnot2.svg") == doc);

    write_circuit("empty.json", qdos::Circuit(2));
    RunResult ascii = run("render empty.json --format ascii");
    CHECK(ascii.code == 0);
    CHECK(ascii.out.find("|00>") != std::string::npos);
    CHECK(ascii.out.find("|11>") != std::string::npos);

    write_circuit("fig12.json", qdos::synth_cphase(0.7).circuit);
    RunResult simp = run("render fig12.json --format ascii --simplified");
    CHECK(simp.code == 0);
    CHECK(simp.out.find("1 blocks") != std::string::npos);
    CHECK(simp.out.find("[e^i0.7]") != std::string::npos);

    write_circuit("big.json", qdos::Circuit(7));
    CHECK(run("render big.json").code == 4);

    write_file("broken.json", "{nope");
    CHECK(run("render broken.json").code == 2);
    CHECK(run("render cnot.json --format pdf").code == 2);
}

TEST_CASE("verify subcommand") {
    qdos::Circuit sw(2);
    sw.add(qdos::Gate::cnot(), {0, 1});
    sw.add(qdos::Gate::cnot_r(), {0, 1});
    sw.add(qdos::Gate::cnot(), {0, 1});
    write_circuit("sw.json", sw);
    write_matrix("swap.txt", qdos::gate_matrix(qdos::Gate::swap()));

    RunResult r = run("verify sw.json --target swap.txt");
    CHECK(r.code == 0);
    const nlohmann::json cert = nlohmann::json::parse(r.out);
    CHECK(cert["residual"].get<double>() <= 1e-12);

    write_circuit("id.json", qdos::Circuit(1));
    write_matrix("id.txt", qdos::ComplexMatrix::identity(2));
    r = run("verify id.json --target id.txt");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["residual"].get<double>() == 0.0);

    qdos::Circuit cn(2);
    cn.add(qdos::Gate::cnot(), {0, 1});
    write_circuit("cn.json", cn);
    CHECK(run("verify cn.json --target swap.txt").code == 3);

    write_matrix("id8.txt", qdos::ComplexMatrix::identity(8));
    CHECK(run("verify cn.json --target id8.txt").code == 2);
    CHECK(run("verify cn.json").code == 2);

    // Target state: Bell pair from H + CNOT.
    qdos::Circuit bell(2);
    bell.add(qdos::Gate::h(), {1});
    bell.add(qdos::Gate::cnot(), {0, 1});
    write_circuit("bell.json", bell);
    const double inv = 1.0 / std::sqrt(2.0);
    write_file("bell_state.json",
               nlohmann::json{{"n_qubits", 2},
                              {"amps", {{inv, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {inv, 0.0}}}}
                   .dump());
    CHECK(run("verify bell.json --target-state bell_state.json").code == 0);
}

TEST_CASE("simulate subcommand") {
    qdos::Circuit bell(2);
    bell.add(qdos::Gate::h(), {1});
    bell.add(qdos::Gate::cnot(), {0, 1});
    write_circuit("bell2.json", bell);
    RunResult r = run("simulate bell2.json");
    CHECK(r.code == 0);
    const nlohmann::json out = nlohmann::json::parse(r.out);
    const double inv = 1.0 / std::sqrt(2.0);
    CHECK(out["amps"][0][0].get<double>() == doctest::Approx(inv).epsilon(1e-12));
    CHECK(out["amps"][3][0].get<double>() == doctest::Approx(inv).epsilon(1e-12));
    CHECK(out["amps"][1][0].get<double>() == 0.0);

    write_circuit("empty1.json", qdos::Circuit(1));
    r = run("simulate empty1.json");
    CHECK(r.code == 0);
    const nlohmann::json e = nlohmann::json::parse(r.out);
    CHECK(e["amps"][0][0] == 1.0);
    CHECK(e["amps"][0][1] == 0.0);

    // RY + PHASE preparation yields (cos t/2, e^{i d} sin t/2).
    const double theta = 0.9, delta = 0.4;
    qdos::Circuit prep(1);
    prep.add(qdos::Gate::ry(theta), {0});
    prep.add(qdos::Gate::phase(delta), {0});
    write_circuit("prep.json", prep);
    r = run("simulate prep.json");
    CHECK(r.code == 0);
    const nlohmann::json p = nlohmann::json::parse(r.out);
    CHECK(p["amps"][0][0].get<double>() == doctest::Approx(std::cos(theta / 2)));
    CHECK(p["amps"][1][0].get<double>() ==
          doctest::Approx(std::cos(delta) * std::sin(theta / 2)));
    CHECK(p["amps"][1][1].get<double>() ==
          doctest::Approx(std::sin(delta) * std::sin(theta / 2)));

    CHECK(run("simulate bell2.json --input 9").code == 2);
    CHECK(run("simulate bell2.json --input 2").code == 0);
}
