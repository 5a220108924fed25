#include "io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace chandeg {

namespace {

using nlohmann::json;

struct EntryParse {
    double value = 0.0;
    Rat exact;
    bool is_exact = false;
};

EntryParse parse_entry(const json& j, const char* where) {
    EntryParse out;
    if (j.is_number_integer()) {
        out.exact = Rat(BigInt(j.get<long long>()));
        out.value = to_double(out.exact);
        out.is_exact = true;
    } else if (j.is_number()) {
        out.value = j.get<double>();
    } else if (j.is_string()) {
        const auto r = parse_rational(j.get<std::string>());
        if (!r)
            throw ParseError(std::string(where) + ": malformed rational \"" +
                             j.get<std::string>() + "\"");
        out.exact = *r;
        out.value = to_double(*r);
        out.is_exact = true;
    } else {
        throw ParseError(std::string(where) + ": expected number or rational string");
    }
    return out;
}

json entry_to_json(const Rat& r) { return json(rat_to_string(r)); }

}  // namespace

Channel channel_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("channel: expected a JSON object");
    for (const char* key : {"q", "px", "outputs", "W"})
        if (!j.contains(key)) throw ParseError(std::string("channel: missing \"") + key + "\"");
    if (!j["q"].is_number_integer()) throw ParseError("channel: q must be an integer");
    const int q = j["q"].get<int>();
    if (q < 1) throw ParseError("channel: q must be positive");
    if (!j["px"].is_array() || !j["outputs"].is_array() || !j["W"].is_array())
        throw ParseError("channel: px, outputs and W must be arrays");

    std::vector<std::string> outputs;
    for (const auto& o : j["outputs"]) {
        if (o.is_string())
            outputs.push_back(o.get<std::string>());
        else
            outputs.push_back(o.dump());
    }
    const std::size_t n = outputs.size();

    bool all_exact = true;
    std::vector<Rat> px_exact;
    std::vector<double> px;
    for (const auto& e : j["px"]) {
        const EntryParse p = parse_entry(e, "px");
        all_exact = all_exact && p.is_exact;
        px_exact.push_back(p.exact);
        px.push_back(p.value);
    }
    if (px.size() != static_cast<std::size_t>(q))
        throw ParseError("channel: px must have q entries");

    if (j["W"].size() != static_cast<std::size_t>(q))
        throw ParseError("channel: W must have one row per input");
    std::vector<std::vector<Rat>> w_exact(q);
    std::vector<std::vector<double>> w(q);
    for (int x = 0; x < q; ++x) {
        const auto& row = j["W"][x];
        if (!row.is_array() || row.size() != n)
            throw ParseError("channel: W row " + std::to_string(x + 1) +
                             " must have one entry per output");
        for (const auto& e : row) {
            const EntryParse p = parse_entry(e, "W");
            all_exact = all_exact && p.is_exact;
            w_exact[x].push_back(p.exact);
            w[x].push_back(p.value);
        }
    }

    if (all_exact)
        return Channel::from_rationals(q, std::move(outputs), std::move(w_exact),
                                       std::move(px_exact));
    return Channel::from_doubles(q, std::move(outputs), std::move(w), std::move(px));
}

Channel channel_from_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("channel: ") + e.what());
    }
    return channel_from_json(j);
}

Channel channel_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return channel_from_text(buf.str());
}

nlohmann::json channel_to_json(const Channel& ch) {
    json j;
    j["q"] = ch.q;
    j["outputs"] = ch.outputs;
    if (ch.exact()) {
        json px = json::array();
        for (const Rat& r : ch.px_exact) px.push_back(entry_to_json(r));
        j["px"] = std::move(px);
        json w = json::array();
        for (const auto& row : ch.w_exact) {
            json jr = json::array();
            for (const Rat& r : row) jr.push_back(entry_to_json(r));
            w.push_back(std::move(jr));
        }
        j["W"] = std::move(w);
    } else {
        j["px"] = ch.px;
        j["W"] = ch.w;
    }
    return j;
}

std::string channel_to_text(const Channel& ch) { return channel_to_json(ch).dump(2) + "\n"; }

void channel_to_file(const Channel& ch, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write \"" + path + "\"");
    out << channel_to_text(ch);
}

nlohmann::json degrade_result_to_json(const DegradeResult& r) {
    // Report numbers are rounded to the fixed 12 significant digits; channel
    // files are data and keep full precision instead.
    json j;
    j["partition"] = r.partition.blocks;
    j["drop"] = round_sig12(r.drop);
    json per_block = json::array();
    for (const auto& b : r.per_block)
        per_block.push_back(
            {{"cost", round_sig12(b.cost)}, {"quad_bound", round_sig12(b.quad_bound)}});
    j["per_block"] = std::move(per_block);
    return j;
}

std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round_sig12(double v) { return std::strtod(format_sig12(v).c_str(), nullptr); }

std::string bound_csv_header() {
    return "q,L,lower_exact,lower_stirling,upper_old,upper_new\n";
}

std::string bound_csv_row(const BoundReport& r) {
    std::string s = std::to_string(r.q);
    s += "," + format_sig12(r.L);
    s += "," + format_sig12(r.lower_exact);
    s += "," + format_sig12(r.lower_stirling);
    s += "," + format_sig12(r.upper_old);
    s += "," + format_sig12(r.upper_new);
    s += "\n";
    return s;
}

}  // namespace chandeg
