#include "poslab/bundles.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace poslab::bundles {

namespace {

std::string fmt_degree(double l) {
    std::ostringstream os;
    os << l;
    return os.str();
}

double weight(const CVector& z, double l) { return std::pow(1.0 + z.squaredNorm(), -l); }

}  // namespace

MetricField line(int n, double l) {
    MetricField f;
    f.rank = 1;
    f.base_dim = n;
    f.label = "o(" + fmt_degree(l) + ")";
    f.eval = [l](const CVector& z) {
        CMatrix h(1, 1);
        h(0, 0) = weight(z, l);
        return h;
    };
    return f;
}

MetricField tangent(int n) {
    MetricField f;
    f.rank = n;
    f.base_dim = n;
    f.label = "tpn";
    f.eval = [](const CVector& z) { return fubini_study_matrix(z); };
    return f;
}

MetricField tangent_twist(int n, double l) {
    MetricField f = twist(tangent(n), l);
    f.label = "tpn_twist(" + fmt_degree(l) + ")";
    return f;
}

MetricField direct_sum(int n, const std::vector<double>& degrees) {
    if (degrees.empty()) fail(ErrorCode::ParamDomain, "direct sum needs at least one summand");
    MetricField f;
    f.rank = static_cast<int>(degrees.size());
    f.base_dim = n;
    f.label = "dsum(";
    for (std::size_t i = 0; i < degrees.size(); ++i) f.label += (i ? "," : "") + fmt_degree(degrees[i]);
    f.label += ")";
    f.eval = [degrees](const CVector& z) {
        const auto r = static_cast<Eigen::Index>(degrees.size());
        CMatrix h = CMatrix::Zero(r, r);
        for (Eigen::Index a = 0; a < r; ++a) h(a, a) = weight(z, degrees[a]);
        return h;
    };
    return f;
}

MetricField trivial(int n, int r) {
    MetricField f;
    f.rank = r;
    f.base_dim = n;
    f.label = "trivial(" + std::to_string(r) + ")";
    f.eval = [r](const CVector&) -> CMatrix { return CMatrix::Identity(r, r); };
    return f;
}

MetricField twist(const MetricField& E, double l) {
    MetricField f = E;
    f.label = E.label + "*o(" + fmt_degree(l) + ")";
    f.eval = [E, l](const CVector& z) -> CMatrix { return E.raw(z) * weight(z, l); };
    return f;
}

MetricField determinant(const MetricField& E) {
    MetricField f;
    f.rank = 1;
    f.base_dim = E.base_dim;
    f.label = "det(" + E.label + ")";
    f.domain_radius = E.domain_radius;
    f.eval = [E](const CVector& z) {
        CMatrix h(1, 1);
        h(0, 0) = E.raw(z).determinant();
        return h;
    };
    return f;
}

MetricField dual(const MetricField& E) {
    MetricField f = E;
    f.label = "dual(" + E.label + ")";
    f.eval = [E](const CVector& z) -> CMatrix {
        const CMatrix h = E.raw(z);
        return h.inverse().transpose();
    };
    return f;
}

MetricField constant_frame_change(const MetricField& E, const CMatrix& a) {
    if (a.rows() != E.rank || a.cols() != E.rank)
        fail(ErrorCode::DimMismatch, "frame change must be rank x rank");
    MetricField f = E;
    f.label = E.label + "*frame";
    f.eval = [E, a](const CVector& z) -> CMatrix { return a.transpose() * E.raw(z) * a.conjugate(); };
    return f;
}

namespace {

std::string strip(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(c));
    return out;
}

std::vector<double> parse_args(const std::string& id, const std::string& inner) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= inner.size()) {
        const std::size_t comma = std::min(inner.find(',', start), inner.size());
        const std::string token = inner.substr(start, comma - start);
        if (token.empty()) fail(ErrorCode::UnknownBundle, "bad bundle identifier '" + id + "'");
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(token, &used);
        } catch (const std::exception&) {
            fail(ErrorCode::UnknownBundle, "bad number in bundle identifier '" + id + "'");
        }
        if (used != token.size()) fail(ErrorCode::UnknownBundle, "bad number in bundle identifier '" + id + "'");
        out.push_back(value);
        start = comma + 1;
    }
    return out;
}

}  // namespace

MetricField from_id(std::string_view raw_id, int n) {
    if (n < 1) fail(ErrorCode::ParamDomain, "base dimension n must be >= 1");
    const std::string id = strip(raw_id);
    if (id == "tpn") return tangent(n);

    const auto open = id.find('(');
    if (open == std::string::npos || id.back() != ')')
        fail(ErrorCode::UnknownBundle, "unknown bundle identifier '" + std::string(raw_id) + "'");
    const std::string head = id.substr(0, open);
    const std::vector<double> args = parse_args(id, id.substr(open + 1, id.size() - open - 2));

    if (head == "o" && args.size() == 1) return line(n, args[0]);
    if (head == "tpn_twist" && args.size() == 1) return tangent_twist(n, args[0]);
    if (head == "dsum") return direct_sum(n, args);
    if (head == "trivial" && args.size() == 1 && args[0] >= 1 && std::floor(args[0]) == args[0])
        return trivial(n, static_cast<int>(args[0]));
    fail(ErrorCode::UnknownBundle, "unknown bundle identifier '" + std::string(raw_id) + "'");
}

}  // namespace poslab::bundles
