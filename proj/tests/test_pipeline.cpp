#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "c4shadow/errors.hpp"
#include "c4shadow/pipeline.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace c4s;
namespace fs = std::filesystem;

namespace {

ExperimentConfig base_config() {
    ExperimentConfig cfg;
    cfg.hamiltonian_path = TEST_DATA_DIR "/active_space_2q.txt";
    cfg.shots = 250;
    cfg.resamples = 200;
    cfg.seed = 11;
    cfg.out_dir = TEST_OUT_DIR "/pipe_scratch";
    return cfg;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int parse_error_line(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ParseError& e) {
        return e.line;
    }
    return -1;
}

}  // namespace

TEST_CASE("config files parse section by section with comments and defaults") {
    std::string text =
        "# experiment description\n"
        "[hamiltonian]\n"
        "path = ham.txt\n"
        "format = fcidump\n"
        "\n"
        "[circuit]\n"
        "angles = 0.5 -0.25 1e-3\n"
        "variant = encoded\n"
        "; alternate comment style\n"
        "[sampling]\n"
        "shots = 1234\n"
        "settings = ZZ XZ\n"
        "[noise]\n"
        "preset = h1-like\n"
        "pm = 0.01\n"
        "[estimation]\n"
        "resamples = 600\n"
        "level = 0.9\n"
        "sweep_increment = 500\n"
        "[run]\n"
        "seed = 99\n"
        "out = out/exp1\n";
    ExperimentConfig cfg = parse_config(text);
    CHECK(cfg.hamiltonian_path == "ham.txt");
    CHECK(cfg.hamiltonian_format == "fcidump");
    CHECK_FALSE(cfg.solve_angles);
    CHECK(cfg.angles.alpha == doctest::Approx(0.5));
    CHECK(cfg.angles.beta == doctest::Approx(-0.25));
    CHECK(cfg.angles.gamma == doctest::Approx(1e-3));
    CHECK(cfg.variant == CircuitVariant::Encoded);
    CHECK(cfg.shots == 1234);
    REQUIRE(cfg.settings.size() == 2);
    CHECK(cfg.settings[0] == LogicalSetting::ZZ);
    CHECK(cfg.settings[1] == LogicalSetting::XZ);
    CHECK(cfg.noise.preset == "h1-like");
    CHECK(cfg.noise.pm.value() == doctest::Approx(0.01));
    CHECK_FALSE(cfg.noise.p1.has_value());
    CHECK(cfg.resamples == 600);
    CHECK(cfg.level == doctest::Approx(0.9));
    CHECK(cfg.sweep_increment == 500);
    CHECK(cfg.seed == 99);
    CHECK(cfg.out_dir == "out/exp1");

    ExperimentConfig bare = parse_config("[hamiltonian]\npath = h.txt\n");
    CHECK(bare.solve_angles);
    CHECK(bare.variant == CircuitVariant::Unencoded);
    CHECK(bare.shots == 1000);
    CHECK(bare.settings.size() == 4);
    CHECK(bare.ensemble == "grid");
    CHECK(bare.noise.preset == "none");
    CHECK(bare.resamples == 5000);
    CHECK(bare.level == doctest::Approx(0.95));
    CHECK(bare.sweep_increment == 0);
    CHECK(bare.seed == 1);
}

TEST_CASE("malformed config lines are rejected with their line number") {
    CHECK(parse_error_line("[nope]\n") == 1);
    CHECK(parse_error_line("[hamiltonian]\nwhat = x\n") == 2);
    CHECK(parse_error_line("[run]\nseed = 1\nseed = 2\n") == 3);
    CHECK(parse_error_line("path = h.txt\n") == 1);  // key before any section
    CHECK(parse_error_line("[run]\nseed\n") == 2);
    CHECK(parse_error_line("[run]\nseed =\n") == 2);
    CHECK(parse_error_line("[run]\nseed = abc\n") == 2);
    CHECK(parse_error_line("[sampling]\nshots = 12.5\n") == 2);
    CHECK(parse_error_line("[circuit]\nangles = 1 2\n") == 2);
    CHECK(parse_error_line("[circuit]\nangles = 1 2 3 4\n") == 2);
    CHECK(parse_error_line("[circuit]\nvariant = stacked\n") == 2);
    CHECK(parse_error_line("[sampling]\nsettings = ZZ YY\n") == 2);
    CHECK(parse_error_line("[hamiltonian\npath = x\n") == 1);
}

TEST_CASE("config validation rejects unusable combinations") {
    ExperimentConfig cfg = base_config();
    CHECK_NOTHROW(cfg.validate());

    ExperimentConfig c1 = cfg;
    c1.ensemble = "random";
    c1.variant = CircuitVariant::Encoded;
    CHECK_THROWS_AS(c1.validate(), ConfigError);
    c1.variant = CircuitVariant::Unencoded;
    CHECK_NOTHROW(c1.validate());

    ExperimentConfig c2 = cfg;
    c2.hamiltonian_path.clear();
    CHECK_THROWS_AS(c2.validate(), ConfigError);

    ExperimentConfig c3 = cfg;
    c3.hamiltonian_format = "qubits";
    CHECK_THROWS_AS(c3.validate(), ConfigError);

    ExperimentConfig c4 = cfg;
    c4.shots = 0;
    CHECK_THROWS_AS(c4.validate(), ConfigError);

    ExperimentConfig c5 = cfg;
    c5.settings.clear();
    CHECK_THROWS_AS(c5.validate(), ConfigError);
    c5.settings = {LogicalSetting::ZZ, LogicalSetting::ZZ};
    CHECK_THROWS_AS(c5.validate(), ConfigError);

    ExperimentConfig c6 = cfg;
    c6.ensemble = "adaptive";
    CHECK_THROWS_AS(c6.validate(), ConfigError);

    ExperimentConfig c7 = cfg;
    c7.resamples = 99;
    CHECK_THROWS_AS(c7.validate(), ConfigError);

    ExperimentConfig c8 = cfg;
    c8.level = 1.0;
    CHECK_THROWS_AS(c8.validate(), ConfigError);
    c8.level = 0.0;
    CHECK_THROWS_AS(c8.validate(), ConfigError);

    ExperimentConfig c9 = cfg;
    c9.sweep_increment = -1;
    CHECK_THROWS_AS(c9.validate(), ConfigError);

    ExperimentConfig c10 = cfg;
    c10.out_dir.clear();
    CHECK_THROWS_AS(c10.validate(), ConfigError);

    ExperimentConfig c11 = cfg;
    c11.solve_angles = false;
    c11.angles = {0.1, std::nan(""), 0.2};
    CHECK_THROWS_AS(c11.validate(), ConfigError);

    ExperimentConfig c12 = cfg;
    c12.noise.preset = "loud";
    CHECK_THROWS_AS(c12.validate(), ConfigError);
    c12.noise.preset = "none";
    c12.noise.p2 = 1.5;
    CHECK_THROWS_AS(c12.validate(), ConfigError);
}

TEST_CASE("the config fingerprint tracks the experiment, not the bookkeeping") {
    ExperimentConfig a = base_config();
    ExperimentConfig b = a;
    b.seed = 999;
    b.out_dir = "somewhere/else";
    CHECK(config_hash(a) == config_hash(b));

    ExperimentConfig c = a;
    c.shots = a.shots + 1;
    CHECK(config_hash(a) != config_hash(c));

    ExperimentConfig d = a;
    d.noise.p2 = 0.001;  // resolved noise is part of the fingerprint
    CHECK(config_hash(a) != config_hash(d));

    std::string h = config_hash(a);
    CHECK(h.size() == 16);
    for (char ch : h) CHECK(std::isxdigit(static_cast<unsigned char>(ch)));

    std::string text = canonical_config_text(a);
    CHECK(text.find("seed") == std::string::npos);
    CHECK(text.find(a.out_dir) == std::string::npos);
    CHECK(text.find("shots=250") != std::string::npos);
}

TEST_CASE("noise presets resolve with overrides on top") {
    NoiseSpec spec;
    spec.preset = "h1-like";
    NoiseModel m = spec.resolve();
    CHECK(m.p2 == doctest::Approx(2e-3));
    CHECK(m.p1 == doctest::Approx(5e-5));
    CHECK(m.pm == doctest::Approx(3e-3));
    CHECK(m.p_prep == doctest::Approx(3e-3));

    spec.pm = 0.25;
    CHECK(spec.resolve().pm == doctest::Approx(0.25));
    CHECK(spec.resolve().p2 == doctest::Approx(2e-3));

    NoiseSpec quiet;
    NoiseModel z = quiet.resolve();
    CHECK(z.p1 == 0.0);
    CHECK(z.p2 == 0.0);
    CHECK(z.pm == 0.0);
    CHECK(z.p_prep == 0.0);

    NoiseSpec bad;
    bad.preset = "imaginary";
    CHECK_THROWS_AS(bad.resolve(), ConfigError);
    NoiseSpec neg;
    neg.p1 = -0.1;
    CHECK_THROWS_AS(neg.resolve(), ConfigError);
}

TEST_CASE("hamiltonians load in either input format") {
    ObservableSum pauli = load_hamiltonian(TEST_DATA_DIR "/active_space_2q.txt", "pauli");
    CHECK(pauli.n_qubits == 2);
    CHECK(pauli.terms.at("II") == doctest::Approx(-1.99134).epsilon(1e-12));

    ObservableSum jw = load_hamiltonian(TEST_DATA_DIR "/active_space_2orb.fcidump", "fcidump");
    CHECK(jw.n_qubits == 2);
    CHECK(jw.terms.count("II") == 1);

    CHECK_THROWS_AS(load_hamiltonian(TEST_DATA_DIR "/active_space_2q.txt", "hdf5"), ConfigError);
    CHECK_THROWS_AS(load_hamiltonian(TEST_DATA_DIR "/no_such_file.txt", "pauli"), ConfigError);
}

TEST_CASE("the bundled example config loads and validates") {
    ExperimentConfig cfg = load_config(TEST_DATA_DIR "/example.cfg");
    CHECK(cfg.hamiltonian_path == "data/active_space_2q.txt");
    CHECK(cfg.solve_angles);
    CHECK(cfg.variant == CircuitVariant::Unencoded);
    CHECK(cfg.shots == 2000);
    CHECK(cfg.settings.size() == 4);
    CHECK(cfg.seed == 7);
}

TEST_CASE("context preparation solves the ground problem once") {
    ExperimentConfig cfg = base_config();
    PipelineContext ctx = prepare_context(cfg);
    CHECK(ctx.ground.energy == doctest::Approx(oracle::kGroundEnergy).epsilon(1e-12));
    CHECK(ctx.angles.alpha == doctest::Approx(oracle::kPrepAngles[0]).epsilon(1e-9));
    CHECK(ctx.angles.beta == doctest::Approx(oracle::kPrepAngles[1]).epsilon(1e-9));
    CHECK(ctx.angles.gamma == doctest::Approx(oracle::kPrepAngles[2]).epsilon(1e-9));

    ExperimentConfig fixed = cfg;
    fixed.solve_angles = false;
    fixed.angles = {0.3, 0.2, 0.1};
    PipelineContext ctx2 = prepare_context(fixed);
    CHECK(ctx2.angles.alpha == doctest::Approx(0.3));
    CHECK(ctx2.angles.gamma == doctest::Approx(0.1));

    ExperimentConfig broken = cfg;
    broken.hamiltonian_path = TEST_DATA_DIR "/missing.txt";
    bool threw = false;
    try {
        prepare_context(broken);
    } catch (const ConfigError& e) {
        threw = true;
        std::string msg = e.what();
        CHECK(msg.find("stage load-hamiltonian") != std::string::npos);
        CHECK(msg.find(config_hash(broken)) != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("simulation interleaves settings round-robin") {
    ExperimentConfig cfg = base_config();
    cfg.shots = 3;
    cfg.settings = {LogicalSetting::XX, LogicalSetting::ZZ};
    PipelineContext ctx = prepare_context(cfg);
    ShotStore store = simulate_variant(cfg, ctx, CircuitVariant::Unencoded);
    REQUIRE(store.records.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(store.records[i].setting == (i % 2 == 0 ? "XX" : "ZZ"));
        CHECK(store.records[i].accepted);
        CHECK(store.records[i].reason == "none");
        CHECK(store.records[i].bits.size() == 2);
    }
    CHECK_THROWS_AS(simulate_variant(cfg, ctx, CircuitVariant::Both), ConfigError);
}

TEST_CASE("simulation is reproducible from the seed") {
    ExperimentConfig cfg = base_config();
    cfg.shots = 40;
    PipelineContext ctx = prepare_context(cfg);
    ShotStore a = simulate_variant(cfg, ctx, CircuitVariant::Unencoded);
    ShotStore b = simulate_variant(cfg, ctx, CircuitVariant::Unencoded);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].setting == b.records[i].setting);
        CHECK(a.records[i].bits == b.records[i].bits);
        CHECK(a.records[i].accepted == b.records[i].accepted);
    }
}

TEST_CASE("the verified circuit rejects about half its noiseless shots") {
    ExperimentConfig cfg = base_config();
    cfg.shots = 400;
    cfg.settings = {LogicalSetting::ZZ};
    PipelineContext ctx = prepare_context(cfg);
    ShotStore store = simulate_variant(cfg, ctx, CircuitVariant::Encoded);
    REQUIRE(store.records.size() == 400);
    std::int64_t accepted = 0;
    for (const auto& r : store.records) {
        if (r.accepted)
            ++accepted;
        else
            CHECK(r.reason == "alpha-frame-nontrivial");
    }
    double frac = static_cast<double>(accepted) / 400.0;
    CHECK(frac > 0.4);
    CHECK(frac < 0.6);
}

TEST_CASE("random per-shot bases sample the full basis alphabet") {
    ExperimentConfig cfg = base_config();
    cfg.ensemble = "random";
    cfg.shots = 300;
    PipelineContext ctx = prepare_context(cfg);
    ShotStore store = simulate_variant(cfg, ctx, CircuitVariant::Unencoded);
    REQUIRE(store.records.size() == 300);
    std::map<char, int> letters;
    for (const auto& r : store.records) {
        REQUIRE(r.setting.size() == 2);
        CHECK(r.accepted);
        for (char c : r.setting) {
            REQUIRE((c == 'X' || c == 'Y' || c == 'Z'));
            ++letters[c];
        }
    }
    CHECK(letters['X'] > 0);
    CHECK(letters['Y'] > 0);
    CHECK(letters['Z'] > 0);
}

TEST_CASE("estimation records are internally consistent") {
    ExperimentConfig cfg = base_config();
    PipelineContext ctx = prepare_context(cfg);
    ShotStore store = simulate_variant(cfg, ctx, CircuitVariant::Unencoded);
    BootstrapSummary boot;
    ResultRecord rec = estimate_record(cfg, ctx, store, "unencoded", &boot);

    CHECK(rec.variant == "unencoded");
    CHECK(rec.e_exact == doctest::Approx(oracle::kGroundEnergy).epsilon(1e-12));

    // The reported energy decomposes over the reported word expectations.
    double sum = ctx.hamiltonian.terms.at("II");
    for (const auto& [word, coeff] : ctx.hamiltonian.terms) {
        if (word == "II") continue;
        sum += coeff * rec.expectations.at(word).value;
    }
    CHECK(rec.energy == doctest::Approx(sum).epsilon(1e-12));

    CHECK(rec.delta_mha ==
          doctest::Approx((rec.energy - rec.e_exact) * 1000.0).epsilon(1e-12));
    CHECK(rec.chemical_accuracy == (std::abs(rec.delta_mha) <= 1.6));

    CHECK(rec.total == 1000);
    CHECK(rec.accepted == 1000);
    REQUIRE(rec.rejections.size() == 4);
    std::int64_t rej_sum = 0;
    for (const auto& [name, count] : rec.rejections) rej_sum += count;
    CHECK(rej_sum == 0);
    CHECK(rec.rejections.count("alpha-frame-nontrivial") == 1);
    CHECK(rec.rejections.count("stabilizer-detect") == 1);
    CHECK(rec.rejections.count("flag-disagree") == 1);
    CHECK(rec.rejections.count("repeated-measure-disagree") == 1);

    REQUIRE(rec.gate_counts.size() == 4);
    for (const auto& [setting, tally] : rec.gate_counts) {
        CHECK(tally.two_qubit == 1);
        CHECK(tally.measurements == 2);
        CHECK_FALSE(tally.two_qubit_is_24);
    }

    CHECK(rec.cfg_hash == config_hash(cfg));
    CHECK(rec.seed == cfg.seed);
    CHECK(rec.resamples == cfg.resamples);
    CHECK(rec.level == doctest::Approx(cfg.level));
    CHECK(rec.ci_low <= rec.boot_median);
    CHECK(rec.boot_median <= rec.ci_high);
    CHECK(static_cast<int>(boot.resamples.size()) == cfg.resamples);
    CHECK(boot.point == doctest::Approx(rec.energy).epsilon(1e-12));

    CHECK_THROWS_AS(estimate_record(cfg, ctx, store, "fancy", nullptr), ConfigError);
}

TEST_CASE("encoded gate tallies flag the deeper settings") {
    ExperimentConfig cfg = base_config();
    cfg.shots = 30;
    PipelineContext ctx = prepare_context(cfg);
    ShotStore store = simulate_variant(cfg, ctx, CircuitVariant::Encoded);
    ResultRecord rec = estimate_record(cfg, ctx, store, "encoded", nullptr);
    CHECK(rec.gate_counts.at("ZZ").two_qubit == 24);
    CHECK(rec.gate_counts.at("XX").two_qubit == 20);
    CHECK(rec.gate_counts.at("XZ").two_qubit == 24);
    CHECK(rec.gate_counts.at("ZX").two_qubit == 24);
    CHECK(rec.gate_counts.at("ZZ").two_qubit_is_24);
    CHECK_FALSE(rec.gate_counts.at("XX").two_qubit_is_24);
    CHECK(rec.gate_counts.at("XZ").two_qubit_is_24);
}

TEST_CASE("estimation failures surface with their stage tag") {
    ExperimentConfig cfg = base_config();
    cfg.settings = {LogicalSetting::ZZ, LogicalSetting::XX};
    PipelineContext ctx = prepare_context(cfg);
    ShotStore store;
    store.records.push_back({"ZZ", "00", true, "none"});
    store.records.push_back({"XX", "--", false, "stabilizer-detect"});
    bool threw = false;
    try {
        estimate_record(cfg, ctx, store, "encoded", nullptr);
    } catch (const EstimationError& e) {
        threw = true;
        CHECK(std::string(e.what()).find("stage estimate") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("a full run writes its artifact set and marks completion") {
    ExperimentConfig cfg = base_config();
    cfg.shots = 300;
    cfg.sweep_increment = 400;
    cfg.out_dir = TEST_OUT_DIR "/pipe_full";
    fs::remove_all(cfg.out_dir);

    PipelineResult res = run_pipeline(cfg);
    REQUIRE(res.results.size() == 1);
    CHECK_FALSE(res.comparison.has_value());

    std::vector<std::string> names;
    for (const auto& f : res.files) {
        CHECK(fs::exists(f));
        names.push_back(fs::path(f).filename().string());
    }
    REQUIRE(names.size() == 4);
    CHECK(names[0] == "store_unencoded.txt");
    CHECK(names[1] == "result_unencoded.json");
    CHECK(names[2] == "sweep_unencoded.csv");
    CHECK(names[3] == "status.txt");
    CHECK(read_file(res.files[3]) == "complete\n");

    // The stored shots reproduce the reported tallies.
    ShotStore store = ShotStore::load_file(res.files[0]);
    CHECK(static_cast<std::int64_t>(store.records.size()) == res.results[0].total);
    std::int64_t accepted = 0;
    for (const auto& r : store.records)
        if (r.accepted) ++accepted;
    CHECK(accepted == res.results[0].accepted);

    // The result file is well-formed and matches the in-memory record.
    nlohmann::json j = nlohmann::json::parse(read_file(res.files[1]));
    CHECK(j.at("variant").get<std::string>() == "unencoded");
    CHECK(j.at("energy").get<double>() ==
          doctest::Approx(res.results[0].energy).epsilon(1e-9));
    CHECK(j.at("exact_energy").get<double>() ==
          doctest::Approx(oracle::kGroundEnergy).epsilon(1e-9));
    CHECK(j.at("shots").at("total").get<std::int64_t>() == 1200);
    CHECK(j.at("rejections").size() == 4);
    CHECK(j.at("expectations").size() == 8);
    CHECK(j.at("provenance").at("config").get<std::string>() == config_hash(cfg));
    CHECK(j.at("provenance").at("seed").get<std::uint64_t>() == cfg.seed);

    // Noiseless sampling lands near the solved energy.
    CHECK(std::abs(res.results[0].energy - oracle::kGroundEnergy) < 0.1);

    // The sweep covers prefixes of the raw stream and ends at the full size.
    std::istringstream sweep(read_file(res.files[2]));
    std::string line;
    REQUIRE(std::getline(sweep, line));
    CHECK(line == "raw_shots,accepted_shots,estimate,median,iqr_low,iqr_high,ci_low,ci_high");
    int rows = 0;
    std::string last;
    while (std::getline(sweep, line))
        if (!line.empty()) {
            last = line;
            ++rows;
        }
    CHECK(rows == 3);  // 400, 800, 1200
    CHECK(last.substr(0, last.find(',')) == "1200");
}

TEST_CASE("identical configurations reproduce their artifacts byte for byte") {
    ExperimentConfig cfg = base_config();
    cfg.shots = 200;
    cfg.resamples = 150;
    cfg.sweep_increment = 300;

    ExperimentConfig a = cfg, b = cfg;
    a.out_dir = TEST_OUT_DIR "/pipe_det_a";
    b.out_dir = TEST_OUT_DIR "/pipe_det_b";
    fs::remove_all(a.out_dir);
    fs::remove_all(b.out_dir);

    PipelineResult ra = run_pipeline(a);
    PipelineResult rb = run_pipeline(b);
    REQUIRE(ra.files.size() == rb.files.size());
    for (std::size_t i = 0; i < ra.files.size(); ++i)
        CHECK(read_file(ra.files[i]) == read_file(rb.files[i]));
}

TEST_CASE("running both variants adds the paired comparison") {
    ExperimentConfig cfg = base_config();
    cfg.shots = 150;
    cfg.variant = CircuitVariant::Both;
    cfg.resamples = 150;
    cfg.out_dir = TEST_OUT_DIR "/pipe_both";
    fs::remove_all(cfg.out_dir);

    PipelineResult res = run_pipeline(cfg);
    REQUIRE(res.results.size() == 2);
    CHECK(res.results[0].variant == "unencoded");
    CHECK(res.results[1].variant == "encoded");
    REQUIRE(res.comparison.has_value());
    CHECK(res.comparison->label_a == "encoded");
    CHECK(res.comparison->label_b == "unencoded");
    CHECK(res.comparison->truth == doctest::Approx(oracle::kGroundEnergy).epsilon(1e-12));
    CHECK(res.comparison->prob_a_better >= 0.0);
    CHECK(res.comparison->prob_a_better <= 1.0);
    CHECK(res.comparison->meets_97_level == (res.comparison->prob_a_better >= 0.97));

    std::vector<std::string> names;
    for (const auto& f : res.files) names.push_back(fs::path(f).filename().string());
    REQUIRE(names.size() == 6);
    CHECK(names[0] == "store_unencoded.txt");
    CHECK(names[1] == "result_unencoded.json");
    CHECK(names[2] == "store_encoded.txt");
    CHECK(names[3] == "result_encoded.json");
    CHECK(names[4] == "compare.json");
    CHECK(names[5] == "status.txt");

    nlohmann::json j = nlohmann::json::parse(read_file(res.files[4]));
    CHECK(j.at("a").at("label").get<std::string>() == "encoded");
    CHECK(j.at("b").at("label").get<std::string>() == "unencoded");
    CHECK(j.at("prob_a_better").get<double>() ==
          doctest::Approx(res.comparison->prob_a_better).epsilon(1e-9));

    // The encoded result keeps only the accepted fraction.
    CHECK(res.results[1].accepted < res.results[1].total);
    std::int64_t rej = 0;
    for (const auto& [name, count] : res.results[1].rejections) rej += count;
    CHECK(res.results[1].accepted + rej == res.results[1].total);
}

TEST_CASE("a failed run leaves the incomplete marker behind") {
    ExperimentConfig cfg = base_config();
    cfg.hamiltonian_path = TEST_DATA_DIR "/else.txt";
    cfg.out_dir = TEST_OUT_DIR "/pipe_fail";
    fs::remove_all(cfg.out_dir);
    CHECK_THROWS_AS(run_pipeline(cfg), ConfigError);
    CHECK(read_file(cfg.out_dir + std::string("/status.txt")) == "INCOMPLETE\n");
}

TEST_CASE("a minimal one-shot run still completes") {
    ExperimentConfig cfg = base_config();
    cfg.shots = 1;
    cfg.resamples = 100;
    cfg.out_dir = TEST_OUT_DIR "/pipe_tiny";
    fs::remove_all(cfg.out_dir);
    PipelineResult res = run_pipeline(cfg);
    CHECK(res.results[0].total == 4);
    CHECK(read_file(cfg.out_dir + std::string("/status.txt")) == "complete\n");
}
