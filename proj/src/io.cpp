#include "selforg/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "selforg/errors.hpp"

namespace selforg {

namespace {

using json = nlohmann::json;

double number_field(const json& doc, const char* key, double fallback)
{
    if (!doc.contains(key))
        return fallback;
    const json& v = doc.at(key);
    if (!v.is_number())
        throw ConfigError(std::string("parameter '") + key + "' must be a number");
    return v.get<double>();
}

} // namespace

SystemParams params_from_json_text(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("parameters: malformed JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("parameters: expected a JSON object");

    static const char* known[] = {"n_atoms", "gamma_1d", "rabi", "pump_detuning", "recoil",
                                  "ext_damping"};
    for (const auto& item : doc.items()) {
        bool ok = false;
        for (const char* k : known)
            ok = ok || item.key() == k;
        if (!ok)
            throw ConfigError("parameters: unknown key '" + item.key() + "'");
    }

    SystemParams p;
    if (doc.contains("n_atoms")) {
        const json& v = doc.at("n_atoms");
        if (!v.is_number_integer())
            throw ConfigError("parameter 'n_atoms' must be an integer");
        p.n_atoms = v.get<int>();
    }
    p.gamma_1d = number_field(doc, "gamma_1d", p.gamma_1d);
    p.rabi = number_field(doc, "rabi", p.rabi);
    p.pump_detuning = number_field(doc, "pump_detuning", p.pump_detuning);
    p.recoil = number_field(doc, "recoil", p.recoil);
    p.ext_damping = number_field(doc, "ext_damping", p.ext_damping);
    p.validate();
    return p;
}

std::string params_to_json_text(const SystemParams& p)
{
    json doc = {{"n_atoms", p.n_atoms},     {"gamma_1d", p.gamma_1d},
                {"rabi", p.rabi},           {"pump_detuning", p.pump_detuning},
                {"recoil", p.recoil},       {"ext_damping", p.ext_damping}};
    return doc.dump();
}

SystemParams load_params(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open parameter file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return params_from_json_text(ss.str());
}

std::uint64_t fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

void write_provenance(std::ostream& os, std::uint64_t config_hash, const std::string& extra)
{
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(config_hash));
    os << "# selforg " << version_string << " config_hash=" << hex;
    if (!extra.empty())
        os << ' ' << extra;
    os << '\n';
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_state_csv(std::ostream& os, const ChainState& state)
{
    os << "j,z,p,re_sigma,im_sigma\n";
    for (int j = 0; j < state.size(); ++j) {
        os << j + 1 << ',' << format_double(state.z[j]) << ',' << format_double(state.p[j]) << ','
           << format_double(state.sigma[j].real()) << ',' << format_double(state.sigma[j].imag())
           << '\n';
    }
}

ChainState read_state_csv(std::istream& is)
{
    std::string line;
    bool header = false;
    std::vector<double> z, p, re, im;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        if (!header) {
            if (line.rfind("j,z,p,re_sigma,im_sigma", 0) != 0)
                throw ConfigError("state CSV: unexpected header '" + line + "'");
            header = true;
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(row, cell, ',')) {
            try {
                std::size_t used = 0;
                values.push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                throw ConfigError("state CSV line " + std::to_string(line_no) + ": bad number '" +
                                  cell + "'");
            }
        }
        if (values.size() != 5)
            throw ConfigError("state CSV line " + std::to_string(line_no) +
                              ": expected 5 columns");
        z.push_back(values[1]);
        p.push_back(values[2]);
        re.push_back(values[3]);
        im.push_back(values[4]);
    }
    if (!header || z.empty())
        throw ConfigError("state CSV: no data rows");

    ChainState s;
    const auto n = static_cast<Eigen::Index>(z.size());
    s.z = Eigen::Map<const RealVector>(z.data(), n);
    s.p = Eigen::Map<const RealVector>(p.data(), n);
    s.sigma.resize(n);
    for (Eigen::Index j = 0; j < n; ++j)
        s.sigma[j] = cplx(re[j], im[j]);
    s.validate();
    return s;
}

ChainState load_state_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open state file " + path.string());
    return read_state_csv(in);
}

} // namespace selforg
