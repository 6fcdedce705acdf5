#include "poslab/user_metric.hpp"

#include <cctype>
#include <fstream>
#include <vector>

namespace poslab::user_metric {

struct Expression::Node {
    enum class Kind { Constant, Coord, ConjCoord, Abs2, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind = Kind::Constant;
    Complex value{};
    int index = 0;
    int exponent = 0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

class Parser {
public:
    Parser(std::string_view text, int base_dim) : text_(text), n_(base_dim) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip();
        if (pos_ != text_.size()) error("unexpected character");
        return e;
    }

private:
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorCode::ParseError,
             "expression '" + std::string(text_) + "': " + what + " at offset " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = make(Node::Kind::Add, lhs, term());
            else if (accept('-')) lhs = make(Node::Kind::Sub, lhs, term());
            else return lhs;
        }
    }
    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make(Node::Kind::Mul, lhs, unary());
            else if (accept('/')) lhs = make(Node::Kind::Div, lhs, unary());
            else return lhs;
        }
    }
    NodePtr unary() {
        if (accept('-')) return make(Node::Kind::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }
    NodePtr power() {
        NodePtr base = primary();
        if (!accept('^')) return base;
        bool negative = false;
        bool paren = accept('(');
        if (accept('-')) negative = true;
        else accept('+');
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) error("integer exponent expected");
        const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
        if (paren && !accept(')')) error("')' expected");
        auto node = std::make_shared<Node>();
        node->kind = Node::Kind::Pow;
        node->lhs = base;
        node->exponent = negative ? -e : e;
        return node;
    }
    int coordinate_index() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) error("coordinate index expected");
        const int k = std::stoi(std::string(text_.substr(start, pos_ - start)));
        if (k < 1 || k > n_) error("coordinate index out of range 1.." + std::to_string(n_));
        return k - 1;
    }
    NodePtr primary() {
        skip();
        if (pos_ >= text_.size()) error("operand expected");
        if (accept('(')) {
            NodePtr e = expr();
            if (!accept(')')) error("')' expected");
            return e;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
                ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                ++pos_;
                if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
            auto node = std::make_shared<Node>();
            try {
                node->value = std::stod(std::string(text_.substr(start, pos_ - start)));
            } catch (const std::exception&) {
                error("bad number");
            }
            return node;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string word(text_.substr(start, pos_ - start));
            auto node = std::make_shared<Node>();
            if (word == "i") {
                node->value = Complex(0.0, 1.0);
            } else if (word == "abs") {
                // abs2
                if (!(pos_ < text_.size() && text_[pos_] == '2')) error("unknown identifier 'abs'");
                ++pos_;
                node->kind = Node::Kind::Abs2;
            } else if (word == "z") {
                node->kind = Node::Kind::Coord;
                node->index = coordinate_index();
            } else if (word == "zb") {
                node->kind = Node::Kind::ConjCoord;
                node->index = coordinate_index();
            } else {
                pos_ = start;
                error("unknown identifier '" + word + "'");
            }
            return node;
        }
        error("operand expected");
    }

    std::string_view text_;
    int n_;
    std::size_t pos_ = 0;
};

Complex evaluate(const Node& node, const CVector& z) {
    switch (node.kind) {
        case Node::Kind::Constant: return node.value;
        case Node::Kind::Coord: return z[node.index];
        case Node::Kind::ConjCoord: return std::conj(z[node.index]);
        case Node::Kind::Abs2: return z.squaredNorm();
        case Node::Kind::Add: return evaluate(*node.lhs, z) + evaluate(*node.rhs, z);
        case Node::Kind::Sub: return evaluate(*node.lhs, z) - evaluate(*node.rhs, z);
        case Node::Kind::Mul: return evaluate(*node.lhs, z) * evaluate(*node.rhs, z);
        case Node::Kind::Div: return evaluate(*node.lhs, z) / evaluate(*node.rhs, z);
        case Node::Kind::Neg: return -evaluate(*node.lhs, z);
        case Node::Kind::Pow: {
            const Complex base = evaluate(*node.lhs, z);
            Complex out(1.0, 0.0);
            for (int k = 0; k < std::abs(node.exponent); ++k) out *= base;
            return node.exponent < 0 ? Complex(1.0, 0.0) / out : out;
        }
    }
    return {};
}

}  // namespace

Expression Expression::parse(std::string_view text, int base_dim) {
    Expression e;
    e.root_ = Parser(text, base_dim).parse();
    e.source_ = std::string(text);
    return e;
}

Complex Expression::operator()(const CVector& z) const { return evaluate(*root_, z); }

MetricField from_json(const nlohmann::json& spec) {
    try {
        MetricField f;
        f.base_dim = spec.at("base_dim").get<int>();
        f.rank = spec.at("rank").get<int>();
        f.label = spec.value("label", std::string("user"));
        if (f.base_dim < 1 || f.rank < 1) fail(ErrorCode::ParseError, "base_dim and rank must be >= 1");
        if (spec.contains("domain_radius")) {
            const double rho = spec.at("domain_radius").get<double>();
            if (!(rho > 0.0)) fail(ErrorCode::ParseError, "domain_radius must be positive");
            f.domain_radius = rho;
        }
        const auto& rows = spec.at("entries");
        if (!rows.is_array() || static_cast<int>(rows.size()) != f.rank)
            fail(ErrorCode::ParseError, "entries must be an array of rank rows");

        // -1 marks an entry taken as the conjugate of its mirror.
        std::vector<std::vector<int>> slot(f.rank, std::vector<int>(f.rank, -1));
        std::vector<Expression> exprs;
        for (int a = 0; a < f.rank; ++a) {
            const auto& row = rows[a];
            if (!row.is_array() || static_cast<int>(row.size()) != f.rank)
                fail(ErrorCode::ParseError, "each entries row must have rank elements");
            for (int b = 0; b < f.rank; ++b) {
                const auto& cell = row[b];
                if (cell.is_null()) {
                    if (b >= a) fail(ErrorCode::ParseError, "only entries below the diagonal may be null");
                    continue;
                }
                std::string text = cell.is_string() ? cell.get<std::string>() : cell.dump();
                exprs.push_back(Expression::parse(text, f.base_dim));
                slot[a][b] = static_cast<int>(exprs.size()) - 1;
            }
        }
        const int r = f.rank;
        f.eval = [exprs, slot, r](const CVector& z) {
            CMatrix h(r, r);
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    if (slot[a][b] >= 0) h(a, b) = exprs[slot[a][b]](z);
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    if (slot[a][b] < 0) h(a, b) = std::conj(h(b, a));
            return h;
        };
        return f;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("user metric JSON: ") + e.what());
    }
}

MetricField from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open user metric file '" + path + "'");
    nlohmann::json spec;
    try {
        in >> spec;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, "user metric file '" + path + "': " + e.what());
    }
    return from_json(spec);
}

}  // namespace poslab::user_metric
