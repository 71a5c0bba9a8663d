#include "endoscopy/spectrum_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>

namespace endoscopy {

static_assert(std::endian::native == std::endian::little, "spectrum files store little-endian doubles");

namespace {

using namespace boost::archive::iterators;
using ToBase64 = base64_from_binary<transform_width<const char*, 6, 8>>;
using FromBase64 = transform_width<binary_from_base64<std::string::const_iterator>, 8, 6>;

}  // namespace

std::string base64_encode_doubles(const std::vector<double>& values)
{
    const auto bytes = values.size() * sizeof(double);
    const char* raw = reinterpret_cast<const char*>(values.data());
    std::string out(ToBase64(raw), ToBase64(raw + bytes));
    out.append((3 - bytes % 3) % 3, '=');
    return out;
}

std::vector<double> base64_decode_doubles(const std::string& text)
{
    std::string body = text;
    std::size_t pad = 0;
    while (!body.empty() && body.back() == '=') {
        body.pop_back();
        ++pad;
    }
    if (pad > 2 || (body.size() + pad) % 4 != 0)
        throw std::invalid_argument("malformed base64 angle array");
    std::string bytes(FromBase64(body.cbegin()), FromBase64(body.cend()));
    // transform_width may emit a trailing partial byte
    bytes.resize(body.size() * 6 / 8);
    if (bytes.size() % sizeof(double) != 0)
        throw std::invalid_argument("base64 angle array is not a whole number of doubles");
    std::vector<double> out(bytes.size() / sizeof(double));
    std::memcpy(out.data(), bytes.data(), bytes.size());
    return out;
}

nlohmann::json spectrum_to_json(const SpectrumStore& store)
{
    const auto& c = store.config();
    nlohmann::json pool = nlohmann::json::object();
    for (const auto& [deg, count] : c.pool_sizes)
        pool[std::to_string(deg)] = count;
    nlohmann::json doc;
    doc["schema"] = kSchema;
    doc["header"] = {{"N", c.N},
                     {"seed", c.seed},
                     {"prime_bound", c.prime_bound},
                     {"ramified", c.ramified},
                     {"pool", pool},
                     {"unramified_places", store.slot_count()}};
    nlohmann::json params = nlohmann::json::array();
    for (const auto& p : store.parameters()) {
        params.push_back({{"label", p.label},
                          {"degree", p.degree},
                          {"tau", p.tau},
                          {"angles", base64_encode_doubles(p.angles)}});
    }
    doc["parameters"] = std::move(params);
    return doc;
}

SpectrumStore spectrum_from_json(const nlohmann::json& doc)
{
    if (doc.value("schema", "") != kSchema)
        throw std::invalid_argument("spectrum document has unknown schema");
    const auto& h = doc.at("header");
    SpectrumConfig c;
    c.N = h.at("N").get<int>();
    c.seed = h.at("seed").get<std::uint64_t>();
    c.prime_bound = h.at("prime_bound").get<std::uint32_t>();
    c.ramified = h.at("ramified").get<std::vector<std::uint32_t>>();
    for (const auto& [deg, count] : h.at("pool").items())
        c.pool_sizes[std::stoi(deg)] = count.get<int>();
    std::vector<SimpleParameter> params;
    for (const auto& rec : doc.at("parameters")) {
        SimpleParameter p;
        p.label = rec.at("label").get<std::string>();
        p.degree = rec.at("degree").get<int>();
        p.tau = rec.value("tau", 0.0);
        p.angles = base64_decode_doubles(rec.at("angles").get<std::string>());
        params.push_back(std::move(p));
    }
    return SpectrumStore(std::move(c), std::move(params));
}

void save_spectrum(const SpectrumStore& store, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << spectrum_to_json(store).dump() << "\n";
}

SpectrumStore load_spectrum(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    return spectrum_from_json(nlohmann::json::parse(in));
}

}  // namespace endoscopy
