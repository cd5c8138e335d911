#include "cadbench/script.hpp"

#include "script_lexer.hpp"

#include <cctype>

namespace cadbench::script {

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (i < src.size() && src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };

    while (i < src.size()) {
        const char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            size_t start = i;
            while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '.')) {
                advance(1);
            }
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                advance(1);
                if (i < src.size() && (src[i] == '+' || src[i] == '-')) advance(1);
                while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
            }
            t.kind = Token::Kind::number;
            t.text = src.substr(start, i - start);
            try {
                t.number = std::stod(t.text);
            } catch (const std::exception&) {
                throw ParseError("malformed number '" + t.text + "'", t.line, t.col);
            }
            out.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = i;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                advance(1);
            }
            t.text = src.substr(start, i - start);
            t.kind = Token::Kind::identifier;
            out.push_back(std::move(t));
            continue;
        }
        if (c == '"') {
            advance(1);
            std::string text;
            while (i < src.size() && src[i] != '"') {
                if (src[i] == '\\' && i + 1 < src.size()) {
                    advance(1);
                    const char esc = src[i];
                    text += esc == 'n' ? '\n' : esc == 't' ? '\t' : esc;
                } else {
                    text += src[i];
                }
                advance(1);
            }
            if (i >= src.size()) throw ParseError("unterminated string", t.line, t.col);
            advance(1);
            t.kind = Token::Kind::string;
            t.text = std::move(text);
            out.push_back(std::move(t));
            continue;
        }
        // Operators and punctuation.
        static const char* two_char[] = {"==", "!=", "<=", ">="};
        bool matched = false;
        for (const char* op : two_char) {
            if (src.compare(i, 2, op) == 0) {
                t.kind = Token::Kind::op;
                t.text = op;
                advance(2);
                out.push_back(std::move(t));
                matched = true;
                break;
            }
        }
        if (matched) continue;
        static const std::string singles = "+-*/%<>=(),.{}[]";
        if (singles.find(c) != std::string::npos) {
            t.kind = Token::Kind::op;
            t.text = std::string(1, c);
            advance(1);
            out.push_back(std::move(t));
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    Token eof;
    eof.kind = Token::Kind::eof;
    eof.line = line;
    eof.col = col;
    out.push_back(eof);
    return out;
}

}  // namespace cadbench::script
