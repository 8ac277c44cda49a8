#include "riskmdp/mdp.hpp"

#include "riskmdp/errors.hpp"
#include "riskmdp/prng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace riskmdp {

namespace {

std::string fmt(const char* format, auto... args) {
    char buf[160];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

// %.17g round-trips any finite double exactly.
void append_real(std::string& out, double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
}

} // namespace

bool Mdp::is_allowed(int state, int action) const {
    const auto& acts = allowed[state];
    return std::binary_search(acts.begin(), acts.end(), action);
}

std::size_t Mdp::total_allowed() const {
    std::size_t total = 0;
    for (const auto& acts : allowed)
        total += acts.size();
    return total;
}

ValidationReport validate_mdp(const Mdp& mdp) {
    ValidationReport rep;
    auto add = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };

    if (mdp.n < 1)
        add(fmt("n = %d must be >= 1", mdp.n));
    if (mdp.m < 1)
        add(fmt("m = %d must be >= 1", mdp.m));
    if (!rep.ok())
        return rep;

    const auto n = static_cast<std::size_t>(mdp.n);
    const auto m = static_cast<std::size_t>(mdp.m);
    if (mdp.allowed.size() != n)
        add(fmt("allowed has %zu entries, expected n = %zu", mdp.allowed.size(), n));
    if (mdp.cost.size() != n * m)
        add(fmt("cost has %zu entries, expected n*m = %zu", mdp.cost.size(), n * m));
    if (mdp.kernel.size() != n * m * n)
        add(fmt("kernel has %zu entries, expected n*m*n = %zu", mdp.kernel.size(),
                n * m * n));
    if (!rep.ok())
        return rep; // shape is broken, indexed checks would be unsafe

    if (!(mdp.gamma > 0.0 && mdp.gamma < 1.0))
        add(fmt("gamma = %.17g out of (0,1)", mdp.gamma));
    if (!(std::isfinite(mdp.cost_bound) && mdp.cost_bound > 0.0))
        add(fmt("cost bound R = %.17g must be finite and positive", mdp.cost_bound));

    for (int i = 0; i < mdp.n; ++i) {
        const auto& acts = mdp.allowed[i];
        if (acts.empty())
            add(fmt("allowed(%d) is empty", i));
        int prev = -1;
        for (int a : acts) {
            if (a < 0 || a >= mdp.m)
                add(fmt("allowed(%d) contains action %d outside [0, %d)", i, a, mdp.m));
            else if (a <= prev)
                add(fmt("allowed(%d) is not strictly increasing at action %d", i, a));
            prev = a;
        }
    }

    for (int i = 0; i < mdp.n; ++i) {
        for (int a = 0; a < mdp.m; ++a) {
            const double g = mdp.stage_cost(i, a);
            if (!std::isfinite(g))
                add(fmt("cost not finite at (s=%d,a=%d)", i, a));
            else if (std::abs(g) > mdp.cost_bound)
                add(fmt("cost %.17g exceeds bound R = %.17g at (s=%d,a=%d)", g,
                        mdp.cost_bound, i, a));

            double sum = 0.0;
            bool entries_ok = true;
            const auto row = mdp.row(i, a);
            for (int j = 0; j < mdp.n; ++j) {
                if (!(row[j] >= 0.0)) { // catches negatives and NaN
                    add(fmt("kernel entry %.17g negative at (s=%d,a=%d,j=%d)", row[j], i,
                            a, j));
                    entries_ok = false;
                }
                sum += row[j];
            }
            if (entries_ok && std::abs(sum - 1.0) > kRowSumTol)
                add(fmt("kernel row sum %.17g != 1 at (s=%d,a=%d)", sum, i, a));
        }
    }
    return rep;
}

bool is_admissible(const Mdp& mdp, const Policy& pi) {
    if (pi.size() != static_cast<std::size_t>(mdp.n))
        return false;
    for (int i = 0; i < mdp.n; ++i)
        if (!mdp.is_allowed(i, pi[i]))
            return false;
    return true;
}

Mdp random_mdp(int n, int m, double gamma, std::uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("n must be >= 1");
    if (m < 1)
        throw std::invalid_argument("m must be >= 1");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("gamma must lie in (0, 1)");

    Mdp mdp;
    mdp.n = n;
    mdp.m = m;
    mdp.gamma = gamma;
    mdp.cost_bound = 1.0;
    mdp.prng = "splitmix64";
    mdp.seed = seed;

    std::vector<int> all_actions(m);
    for (int a = 0; a < m; ++a)
        all_actions[a] = a;
    mdp.allowed.assign(n, all_actions);

    SplitMix64 gen(seed);
    mdp.kernel.resize(static_cast<std::size_t>(n) * m * n);
    for (int i = 0; i < n; ++i) {
        for (int a = 0; a < m; ++a) {
            double* row = mdp.kernel.data() + (static_cast<std::size_t>(i) * m + a) * n;
            double sum = 0.0;
            for (int j = 0; j < n; ++j) {
                row[j] = gen.next_double();
                sum += row[j];
            }
            for (int j = 0; j < n; ++j)
                row[j] /= sum;
        }
    }
    mdp.cost.resize(static_cast<std::size_t>(n) * m);
    for (double& g : mdp.cost)
        g = gen.next_double();
    return mdp;
}

std::size_t save_mdp(const Mdp& mdp, std::ostream& out) {
    if (auto rep = validate_mdp(mdp); !rep.ok())
        throw ValidationError("refusing to save invalid instance: " + rep.violations.front());

    std::string doc;
    doc.reserve(mdp.kernel.size() * 20 + 1024);
    doc += "{\n";
    doc += "  \"n\": " + std::to_string(mdp.n) + ",\n";
    doc += "  \"m\": " + std::to_string(mdp.m) + ",\n";
    doc += "  \"gamma\": ";
    append_real(doc, mdp.gamma);
    doc += ",\n  \"R\": ";
    append_real(doc, mdp.cost_bound);
    doc += ",\n  \"prng\": \"" + mdp.prng + "\",\n";
    if (mdp.seed)
        doc += "  \"seed\": " + std::to_string(*mdp.seed) + ",\n";

    doc += "  \"allowed\": [";
    for (int i = 0; i < mdp.n; ++i) {
        doc += i == 0 ? "[" : ", [";
        for (std::size_t k = 0; k < mdp.allowed[i].size(); ++k) {
            if (k > 0)
                doc += ",";
            doc += std::to_string(mdp.allowed[i][k]);
        }
        doc += "]";
    }
    doc += "],\n";

    doc += "  \"cost\": [";
    for (int i = 0; i < mdp.n; ++i) {
        doc += i == 0 ? "[" : ", [";
        for (int a = 0; a < mdp.m; ++a) {
            if (a > 0)
                doc += ",";
            append_real(doc, mdp.stage_cost(i, a));
        }
        doc += "]";
    }
    doc += "],\n";

    doc += "  \"kernel\": [";
    for (int i = 0; i < mdp.n; ++i) {
        doc += i == 0 ? "\n    [" : ",\n    [";
        for (int a = 0; a < mdp.m; ++a) {
            doc += a == 0 ? "[" : ", [";
            const auto row = mdp.row(i, a);
            for (int j = 0; j < mdp.n; ++j) {
                if (j > 0)
                    doc += ",";
                append_real(doc, row[j]);
            }
            doc += "]";
        }
        doc += "]";
    }
    doc += "\n  ]\n}\n";

    out.write(doc.data(), static_cast<std::streamsize>(doc.size()));
    if (!out)
        throw IoError("write failed while saving instance");
    return doc.size();
}

std::size_t save_mdp_file(const Mdp& mdp, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open \"" + path + "\" for writing");
    return save_mdp(mdp, out);
}

namespace {

using nlohmann::json;

const json& require_field(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end())
        throw ParseError(fmt("missing field \"%s\"", key));
    return *it;
}

int read_int(const json& doc, const char* key) {
    const json& field = require_field(doc, key);
    if (!field.is_number_integer())
        throw ParseError(fmt("field \"%s\" must be an integer", key));
    return field.get<int>();
}

double read_real(const json& doc, const char* key) {
    const json& field = require_field(doc, key);
    if (!field.is_number())
        throw ParseError(fmt("field \"%s\" must be a number", key));
    return field.get<double>();
}

} // namespace

Mdp load_mdp(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("document root must be an object");

    Mdp mdp;
    mdp.n = read_int(doc, "n");
    mdp.m = read_int(doc, "m");
    mdp.gamma = read_real(doc, "gamma");
    mdp.cost_bound = read_real(doc, "R");

    const json& prng = require_field(doc, "prng");
    if (!prng.is_string())
        throw ParseError("field \"prng\" must be a string");
    mdp.prng = prng.get<std::string>();

    if (auto it = doc.find("seed"); it != doc.end()) {
        if (!it->is_number_unsigned())
            throw ParseError("field \"seed\" must be an unsigned integer");
        mdp.seed = it->get<std::uint64_t>();
    }

    const json& allowed = require_field(doc, "allowed");
    if (!allowed.is_array())
        throw ParseError("field \"allowed\" must be an array");
    mdp.allowed.reserve(allowed.size());
    for (const json& acts : allowed) {
        if (!acts.is_array())
            throw ParseError("field \"allowed\" must contain arrays of action indices");
        std::vector<int> list;
        list.reserve(acts.size());
        for (const json& a : acts) {
            if (!a.is_number_integer())
                throw ParseError("field \"allowed\" must contain integer action indices");
            list.push_back(a.get<int>());
        }
        mdp.allowed.push_back(std::move(list));
    }

    const json& cost = require_field(doc, "cost");
    if (!cost.is_array())
        throw ParseError("field \"cost\" must be an array");
    for (const json& per_state : cost) {
        if (!per_state.is_array())
            throw ParseError("field \"cost\" must be an n x m array of numbers");
        for (const json& g : per_state) {
            if (!g.is_number())
                throw ParseError("field \"cost\" must be an n x m array of numbers");
            mdp.cost.push_back(g.get<double>());
        }
    }

    const json& kernel = require_field(doc, "kernel");
    if (!kernel.is_array())
        throw ParseError("field \"kernel\" must be an array");
    for (const json& per_state : kernel) {
        if (!per_state.is_array())
            throw ParseError("field \"kernel\" must be an n x m x n array of numbers");
        for (const json& row : per_state) {
            if (!row.is_array())
                throw ParseError("field \"kernel\" must be an n x m x n array of numbers");
            for (const json& p : row) {
                if (!p.is_number())
                    throw ParseError(
                        "field \"kernel\" must be an n x m x n array of numbers");
                mdp.kernel.push_back(p.get<double>());
            }
        }
    }

    if (auto rep = validate_mdp(mdp); !rep.ok()) {
        std::ostringstream msg;
        msg << "instance fails validation:";
        for (const auto& v : rep.violations)
            msg << " " << v << ";";
        throw ValidationError(msg.str());
    }
    return mdp;
}

Mdp load_mdp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open \"" + path + "\" for reading");
    return load_mdp(in);
}

} // namespace riskmdp
