#include "csr/instances.hpp"

#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"

namespace csr {

namespace {

// Marker symbols for gen_claim1, in alphabet order after A and B. Starting at
// 'x' keeps the small families on the familiar {A,B,x,y,z} alphabet.
constexpr std::string_view kMarkerPool = "xyzabcdefghijklmnopqrstuvw";

// Uniform draw from [0, bound) that only uses the standardized mt19937_64
// output stream, so instances are identical across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

std::string uppercase_alphabet(int size) {
    if (size < 2 || size > 26) {
        throw std::invalid_argument("alphabet size must be in [2, 26]");
    }
    std::string symbols;
    for (int i = 0; i < size; ++i) {
        symbols.push_back(static_cast<char>('A' + i));
    }
    return symbols;
}

} // namespace

LabeledInstance gen_claim1(int t, int l) {
    if (t < 2) {
        throw std::invalid_argument("gen_claim1: t must be >= 2");
    }
    if (t > static_cast<int>(kMarkerPool.size())) {
        throw std::invalid_argument("gen_claim1: t must be <= 26");
    }
    if (l < 1) {
        throw std::invalid_argument("gen_claim1: l must be >= 1");
    }
    std::string symbols = "AB";
    symbols.append(kMarkerPool.substr(0, static_cast<std::size_t>(t)));
    std::vector<std::string> rows;
    rows.reserve(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        const char marker = kMarkerPool[static_cast<std::size_t>(i)];
        std::string row;
        row.push_back(marker);
        row.append(static_cast<std::size_t>(l), 'B');
        row.push_back(marker);
        row.append(static_cast<std::size_t>(l - 1), 'A');
        row.push_back(i == 0 ? 'B' : 'A'); // the single deviant column
        row.push_back('A');
        rows.push_back(std::move(row));
    }
    LabeledInstance out{Instance(Alphabet(symbols), std::move(rows)), {}, ""};
    out.provenance = "claim1 t=" + std::to_string(t) + " l=" + std::to_string(l);

    Solution opt = evaluate(std::string(static_cast<std::size_t>(l), 'B'), out.instance);
    // B^l occurs exactly in every row, so cost 0 is optimal by construction.
    out.certified.push_back(CertifiedSolution{l, std::move(opt), true});
    return out;
}

LabeledInstance gen_shrink(int t, int l, int k) {
    if (t < 2 || l < 1 || k < 1) {
        throw std::invalid_argument("gen_shrink: requires t >= 2, l >= 1, k >= 1");
    }
    std::vector<std::string> rows;
    rows.reserve(static_cast<std::size_t>(t));
    for (int i = 0; i < t - 1; ++i) {
        std::string row(static_cast<std::size_t>(l + k), 'A');
        row.append(static_cast<std::size_t>(l), 'B');
        row.push_back('A');
        rows.push_back(std::move(row));
    }
    std::string last(static_cast<std::size_t>(2 * l + k), 'B');
    last.push_back('A');
    rows.push_back(std::move(last));
    LabeledInstance out{Instance(Alphabet("AB"), std::move(rows)), {}, ""};
    out.provenance = "shrink t=" + std::to_string(t) + " l=" + std::to_string(l) +
                     " k=" + std::to_string(k);
    return out;
}

LabeledInstance gen_random(int t, int n, int alphabet_size, std::uint64_t seed) {
    if (t < 1 || n < 1) {
        throw std::invalid_argument("gen_random: t and n must be >= 1");
    }
    const std::string symbols = uppercase_alphabet(alphabet_size);
    std::mt19937_64 rng(seed);
    std::vector<std::string> rows;
    rows.reserve(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        std::string row(static_cast<std::size_t>(n), '\0');
        for (int j = 0; j < n; ++j) {
            row[static_cast<std::size_t>(j)] =
                symbols[bounded(rng, static_cast<std::uint64_t>(alphabet_size))];
        }
        rows.push_back(std::move(row));
    }
    LabeledInstance out{Instance(Alphabet(symbols), std::move(rows)), {}, ""};
    out.provenance = "random t=" + std::to_string(t) + " n=" + std::to_string(n) +
                     " sigma=" + std::to_string(alphabet_size) +
                     " seed=" + std::to_string(seed);
    return out;
}

LabeledInstance gen_planted(int t, int n, int length, int d, std::uint64_t seed,
                            int alphabet_size) {
    if (t < 1 || n < 1) {
        throw std::invalid_argument("gen_planted: t and n must be >= 1");
    }
    if (length < 1 || length > n) {
        throw std::invalid_argument("gen_planted: length must be in [1, n]");
    }
    if (d < 0 || d > length) {
        throw std::invalid_argument("gen_planted: d must be in [0, length]");
    }
    const std::string symbols = uppercase_alphabet(alphabet_size);
    std::mt19937_64 rng(seed);
    const auto draw_symbol = [&]() {
        return symbols[bounded(rng, static_cast<std::uint64_t>(alphabet_size))];
    };

    std::string pattern(static_cast<std::size_t>(length), '\0');
    for (int j = 0; j < length; ++j) {
        pattern[static_cast<std::size_t>(j)] = draw_symbol();
    }
    std::vector<std::string> rows;
    rows.reserve(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        std::string row(static_cast<std::size_t>(n), '\0');
        for (int j = 0; j < n; ++j) {
            row[static_cast<std::size_t>(j)] = draw_symbol();
        }
        const int start =
            static_cast<int>(bounded(rng, static_cast<std::uint64_t>(n - length + 1)));
        std::string copy = pattern;
        // Mutate exactly d distinct positions; drawing the original symbol
        // again is allowed, so the planted distance is <= d.
        std::vector<int> positions(static_cast<std::size_t>(length));
        for (int j = 0; j < length; ++j) {
            positions[static_cast<std::size_t>(j)] = j;
        }
        for (int m = 0; m < d; ++m) {
            const std::size_t pick = static_cast<std::size_t>(
                bounded(rng, static_cast<std::uint64_t>(length - m)));
            const int pos = positions[pick];
            positions[pick] = positions[static_cast<std::size_t>(length - m - 1)];
            copy[static_cast<std::size_t>(pos)] = draw_symbol();
        }
        row.replace(static_cast<std::size_t>(start), static_cast<std::size_t>(length), copy);
        rows.push_back(std::move(row));
    }
    LabeledInstance out{Instance(Alphabet(symbols), std::move(rows)), {}, ""};
    out.provenance = "planted t=" + std::to_string(t) + " n=" + std::to_string(n) +
                     " L=" + std::to_string(length) + " d=" + std::to_string(d) +
                     " sigma=" + std::to_string(alphabet_size) +
                     " seed=" + std::to_string(seed);
    out.certified.push_back(
        CertifiedSolution{length, evaluate(pattern, out.instance), false});
    return out;
}

// --- file formats -----------------------------------------------------------

ParseError::ParseError(const std::string& origin, int line, const std::string& message)
    : std::runtime_error(origin + ":" + std::to_string(line) + ": " + message),
      line_(line) {}

std::string format_instance(const Instance& instance) {
    std::string out = "#csr v1 t=" + std::to_string(instance.t()) +
                      " n=" + std::to_string(instance.n()) +
                      " sigma=" + instance.alphabet().symbols() + "\n";
    for (const std::string& row : instance.sequences()) {
        out += row;
        out += '\n';
    }
    return out;
}

Instance parse_instance(std::string_view text, const std::string& origin) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            lines.emplace_back(text.substr(pos));
            pos = text.size();
        } else {
            lines.emplace_back(text.substr(pos, eol - pos));
            pos = eol + 1;
        }
    }
    if (lines.empty()) {
        throw ParseError(origin, 1, "empty instance file");
    }
    const std::string& header = lines[0];
    int t = 0;
    int n = 0;
    std::string sigma;
    {
        std::istringstream in(header);
        std::string magic, version, t_field, n_field, sigma_field;
        in >> magic >> version >> t_field >> n_field >> sigma_field;
        std::string extra;
        if (magic != "#csr" || version != "v1" || (in >> extra)) {
            throw ParseError(origin, 1, "expected header '#csr v1 t=<t> n=<n> sigma=<symbols>'");
        }
        auto field_value = [&](const std::string& field, const char* name) {
            const std::string prefix = std::string(name) + "=";
            if (field.rfind(prefix, 0) != 0 || field.size() == prefix.size()) {
                throw ParseError(origin, 1, "malformed header field '" + field + "'");
            }
            return field.substr(prefix.size());
        };
        try {
            t = std::stoi(field_value(t_field, "t"));
            n = std::stoi(field_value(n_field, "n"));
        } catch (const std::exception&) {
            throw ParseError(origin, 1, "non-numeric t/n in header");
        }
        sigma = field_value(sigma_field, "sigma");
    }
    if (t < 1 || n < 1) {
        throw ParseError(origin, 1, "t and n must be positive");
    }
    if (static_cast<int>(lines.size()) - 1 != t) {
        throw ParseError(origin, static_cast<int>(lines.size()),
                         "expected " + std::to_string(t) + " sequence lines, found " +
                             std::to_string(lines.size() - 1));
    }
    Alphabet alphabet = [&] {
        try {
            return Alphabet(sigma);
        } catch (const std::invalid_argument& e) {
            throw ParseError(origin, 1, e.what());
        }
    }();
    std::vector<std::string> rows;
    rows.reserve(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        const int line_no = i + 2;
        const std::string& row = lines[static_cast<std::size_t>(i) + 1];
        if (static_cast<int>(row.size()) != n) {
            throw ParseError(origin, line_no,
                             "sequence length " + std::to_string(row.size()) +
                                 " does not match n=" + std::to_string(n));
        }
        for (char c : row) {
            if (!alphabet.contains(c)) {
                throw ParseError(origin, line_no,
                                 std::string("symbol '") + c + "' not in declared alphabet");
            }
        }
        rows.push_back(row);
    }
    return Instance(std::move(alphabet), std::move(rows));
}

Instance read_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path.string(), 0, "cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str(), path.string());
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << format_instance(instance);
}

std::string format_solution(const SolutionDoc& doc) {
    nlohmann::ordered_json j;
    j["pattern"] = doc.solution.pattern;
    j["cost"] = doc.solution.cost;
    nlohmann::ordered_json occs = nlohmann::ordered_json::array();
    for (const Occurrence& occ : doc.solution.occurrences) {
        occs.push_back({occ.seq_index, occ.start});
    }
    j["occurrences"] = std::move(occs);
    j["algorithm"] = doc.algorithm;
    j["params"] = doc.params;
    j["provenance"] = doc.provenance;
    return j.dump(2) + "\n";
}

SolutionDoc parse_solution(std::string_view text, const std::string& origin) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin, 1, std::string("invalid JSON: ") + e.what());
    }
    SolutionDoc doc;
    try {
        doc.solution.pattern = j.at("pattern").get<std::string>();
        doc.solution.cost = j.at("cost").get<long long>();
        for (const auto& pair : j.at("occurrences")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ParseError(origin, 1, "occurrences must be [seq,start] pairs");
            }
            doc.solution.occurrences.push_back(
                Occurrence{pair[0].get<int>(), pair[1].get<int>(),
                           static_cast<int>(doc.solution.pattern.size())});
        }
        doc.algorithm = j.at("algorithm").get<std::string>();
        doc.params = j.at("params").get<std::map<std::string, std::string>>();
        doc.provenance = j.at("provenance").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin, 1, std::string("malformed solution document: ") + e.what());
    }
    if (doc.solution.pattern.empty()) {
        throw ParseError(origin, 1, "empty pattern");
    }
    if (doc.solution.cost < 0) {
        throw ParseError(origin, 1, "negative cost");
    }
    return doc;
}

SolutionDoc read_solution(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path.string(), 0, "cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_solution(buffer.str(), path.string());
}

SolutionDoc read_solution(const std::filesystem::path& path, const Instance& instance) {
    SolutionDoc doc = read_solution(path);
    long long actual = 0;
    try {
        actual = recompute_cost(doc.solution, instance);
    } catch (const std::invalid_argument& e) {
        throw ParseError(path.string(), 1, e.what());
    }
    if (actual != doc.solution.cost) {
        throw ParseError(path.string(), 1,
                         "stored cost " + std::to_string(doc.solution.cost) +
                             " does not match recomputed cost " + std::to_string(actual));
    }
    return doc;
}

void write_solution(const SolutionDoc& doc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << format_solution(doc);
}

} // namespace csr
