#include "ocedforge/rdf.hpp"

namespace ocedforge::rdf {

std::string Term::to_string() const {
    if (kind_ == Kind::Iri) return "<" + value_ + ">";
    std::string out = "\"";
    for (char c : value_) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '"': out += "\\\""; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    out += '"';
    if (kind_ == Kind::TypedLiteral) out += "^^<" + extra_ + ">";
    else if (!extra_.empty()) out += "@" + extra_;
    return out;
}

} // namespace ocedforge::rdf
