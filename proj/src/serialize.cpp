#include "isogauss/serialize.hpp"

#include "isogauss/errors.hpp"

namespace isogauss {

Json to_json(const mpz_class& v) { return v.get_str(); }

Json to_json(const mpq_class& v) { return v.get_str(); }

Json to_json(const CycInt& v)
{
    Json out = Json::array();
    for (const auto& c : v.coeffs())
        out.push_back(c.get_str());
    return out;
}

Json to_json(const QuadValue& v) { return Json{{"a", v.a.get_str()}, {"b", v.b.get_str()}}; }

Json to_json(const FormClass& c) { return Json{{"n", c.n}, {"d", c.d}, {"disc", disc_name(c.disc)}}; }

Json to_json(const SymMatrix& m)
{
    Json out = Json::array();
    for (int i = 0; i < m.n(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.n(); ++j)
            row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

SymMatrix parse_sym_matrix(const PrimeContext& ctx, const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("matrix is not valid JSON: ") + e.what());
    }
    if (!j.is_array())
        throw UsageError("matrix must be an array of rows");
    std::vector<std::vector<long long>> rows;
    for (const auto& row : j) {
        if (!row.is_array())
            throw UsageError("matrix rows must be arrays");
        std::vector<long long> r;
        for (const auto& x : row) {
            if (!x.is_number_integer())
                throw UsageError("matrix entries must be integers");
            r.push_back(x.get<long long>());
        }
        rows.push_back(std::move(r));
    }
    return SymMatrix::from_rows(ctx, rows);
}

} // namespace isogauss
