#include "gmfuse/cli.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gmfuse/dataio.hpp"
#include "gmfuse/props.hpp"

namespace gmfuse::cli {

namespace {

std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::stringstream ss(s);
    while (std::getline(ss, part, sep)) parts.push_back(trim(part));
    return parts;
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + s + "'");
    }
    return v;
}

void apply_dataset(eval::ExperimentConfig& config, const std::string& value) {
    const std::vector<std::string> parts = split(value, ',');
    if (parts.empty() || parts[0].empty()) {
        throw ConfigError("config: dataset entry is empty");
    }
    eval::DatasetRef ref;
    ref.path = parts[0];
    if (parts.size() > 1 && !parts[1].empty()) ref.label_column = parts[1];
    if (parts.size() > 2) {
        throw ConfigError("config: dataset entry '" + value +
                          "' has too many fields (expected path[,label-column])");
    }
    config.datasets.push_back(ref);
}

} // namespace

eval::ExperimentConfig parse_config_text(const std::string& text) {
    eval::ExperimentConfig config;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": key '" + key +
                              "' has no value");
        }
        if (key == "dataset") {
            apply_dataset(config, value);
        } else if (key == "size") {
            config.sizes.push_back(parse_u64(value, key));
        } else if (key == "sizes") {
            for (const std::string& v : split(value, ',')) {
                config.sizes.push_back(parse_u64(v, key));
            }
        } else if (key == "combiner") {
            config.combiners.push_back(value);
        } else if (key == "combiners") {
            for (const std::string& v : split(value, ',')) config.combiners.push_back(v);
        } else if (key == "folds") {
            config.folds = parse_u64(value, key);
        } else if (key == "repeats") {
            config.repeats = parse_u64(value, key);
        } else if (key == "seed") {
            config.seed = parse_u64(value, key);
        } else if (key == "tie_policy") {
            config.tie_policy = fusion::parse_tie_policy(value);
        } else if (key == "output_dir") {
            config.output_dir = value;
        } else if (key == "threads") {
            config.threads = parse_u64(value, key);
        } else if (key == "stats_alpha") {
            config.stats_alpha = std::stod(value);
        } else {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                              key + "'");
        }
    }
    config.validate();
    return config;
}

eval::ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

namespace {

std::string format_vec(std::span<const double> v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", v[i]);
        os << (i ? ", " : "") << buf;
    }
    os << ")";
    return os.str();
}

} // namespace

int cmd_run(const eval::ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    std::vector<data::Dataset> datasets;
    for (const eval::DatasetRef& ref : config.datasets) {
        data::LoadResult loaded = data::load_dataset(ref.path, ref.label_column);
        for (const std::string& w : loaded.warnings) {
            err << "warning: " << loaded.dataset.name << ": " << w << "\n";
        }
        datasets.push_back(std::move(loaded.dataset));
    }

    const eval::ResultTable table = eval::run_experiment(config, datasets);

    std::filesystem::create_directories(config.output_dir);
    const auto write_file = [&](const std::string& name, const std::string& content) {
        const std::string path = config.output_dir + "/" + name;
        std::ofstream of(path, std::ios::binary);
        if (!of) throw DataError("cannot write output file: " + path);
        of << content;
    };
    {
        std::ostringstream csv;
        table.write_csv(csv, true);
        write_file("results.csv", csv.str());
    }
    write_file("summary.txt", table.summary());
    write_file("stats.txt", eval::stats_grid(table, config.stats_alpha));
    write_file("timing.csv", table.timing_report());

    out << table.summary();
    out << "wrote results.csv, summary.txt, stats.txt, timing.csv to " << config.output_dir
        << "\n";
    if (!table.failures.empty()) {
        err << table.failures.size() << " cell(s) failed; see summary.txt\n";
        return kExitData;
    }
    return kExitOk;
}

int cmd_combine(const std::string& score_path, const std::string& combiner_name,
                const std::string& tie_policy, std::uint64_t seed, bool normalize,
                std::ostream& out, std::ostream& err) {
    (void)err;
    const data::ScoreFile file = data::load_score_file(score_path, normalize);
    const fusion::Combiner combiner = fusion::parse_combiner(combiner_name);
    const fusion::TiePolicy policy = fusion::parse_tie_policy(tie_policy);
    Rng rng(seed);

    const fusion::Prediction pred =
        fusion::classify(file.scores, combiner, policy, rng);

    const auto class_name = [&file](std::size_t j) {
        if (j < file.class_names.size()) return file.class_names[j];
        return "class " + std::to_string(j + 1);
    };

    out << "combiner: " << combiner.name << "\n";
    out << "members: " << file.scores.members() << ", classes: " << file.scores.classes()
        << "\n";
    if (pred.trace) {
        const fusion::GmTrace& trace = *pred.trace;
        const std::size_t n = file.scores.members();
        const std::size_t l = file.scores.classes();
        for (std::size_t j = 0; j < l; ++j) {
            std::vector<double> w(n);
            for (std::size_t i = 0; i < n; ++i) w[i] = trace.weights[i * l + j];
            char alpha_buf[32], d_buf[32];
            std::snprintf(alpha_buf, sizeof(alpha_buf), "%.6g", trace.alpha[j]);
            std::snprintf(d_buf, sizeof(d_buf), "%.6g", trace.dist_sum[j]);
            out << class_name(j) << ": alpha = " << alpha_buf << ", d = " << d_buf
                << ", weights = " << format_vec(w) << "\n";
        }
    }
    out << "Value = " << format_vec(pred.fused_scores) << "\n";
    out << "decision: " << class_name(pred.class_index) << "\n";
    return kExitOk;
}

int cmd_props(std::size_t samples, std::uint64_t seed, std::ostream& out, std::ostream& err) {
    if (samples < 1) throw ConfigError("props: samples must be at least 1");
    props::SuiteOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    const std::vector<props::PropertyResult> results = props::run_all(opts);
    std::size_t failed = 0;
    for (const props::PropertyResult& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.checks
            << " checks)";
        if (!r.passed) out << "\n       counterexample: " << r.witness;
        out << "\n";
        if (!r.passed) ++failed;
    }
    out << results.size() - failed << "/" << results.size() << " properties passed\n";
    if (failed) {
        err << failed << " property(ies) failed\n";
        return kExitPropertyFailure;
    }
    return kExitOk;
}

} // namespace gmfuse::cli
