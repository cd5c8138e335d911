#pragma once

#include <string>
#include <vector>

namespace cadbench::script {

struct Token {
    enum class Kind { number, string, identifier, op, eof };
    Kind kind = Kind::eof;
    std::string text;
    double number = 0.0;
    int line = 0, col = 0;
};

std::vector<Token> lex(const std::string& src);

}  // namespace cadbench::script
