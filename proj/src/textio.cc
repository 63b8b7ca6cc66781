/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "textio.hh"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

using namespace dx;

using nlohmann::json;

using std::map;
using std::set;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

auto dx::read_source(const string & path) -> SourceText
{
    std::ifstream in(path);
    if (! in)
        throw Error(ErrorCode::Io, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return SourceText{ ss.str(), path };
}

namespace
{
    enum class Tok
    {
        Ident,
        Null,
        Quoted,
        Int,
        LParen, RParen, LBracket, RBracket,
        Comma, Dot, Slash, Colon, Define,
        Eq, Neq, Arrow, And, Or, Tilde, Star,
        End
    };

    auto describe(Tok t) -> string
    {
        switch (t) {
            case Tok::Ident:    return "identifier";
            case Tok::Null:     return "null";
            case Tok::Quoted:   return "quoted constant";
            case Tok::Int:      return "integer";
            case Tok::LParen:   return "'('";
            case Tok::RParen:   return "')'";
            case Tok::LBracket: return "'['";
            case Tok::RBracket: return "']'";
            case Tok::Comma:    return "','";
            case Tok::Dot:      return "'.'";
            case Tok::Slash:    return "'/'";
            case Tok::Colon:    return "':'";
            case Tok::Define:   return "':='";
            case Tok::Eq:       return "'='";
            case Tok::Neq:      return "'!='";
            case Tok::Arrow:    return "'->'";
            case Tok::And:      return "'/\\'";
            case Tok::Or:       return "'\\/'";
            case Tok::Tilde:    return "'~'";
            case Tok::Star:     return "'*'";
            case Tok::End:      return "end of input";
        }
        return "token";
    }

    struct Token
    {
        Tok kind;
        string text;
        int line, column;
    };

    auto ident_char(char c) -> bool
    {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    auto lex(const SourceText & src) -> vector<Token>
    {
        vector<Token> result;
        const string & s = src.text;
        int line = 1, col = 1;
        size_t i = 0;

        auto advance = [&] (size_t n) {
            for (size_t k = 0 ; k < n ; ++k, ++i) {
                if (s[i] == '\n') {
                    ++line;
                    col = 1;
                }
                else
                    ++col;
            }
        };

        while (i < s.size()) {
            char c = s[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
                continue;
            }
            if (c == '#') {
                while (i < s.size() && s[i] != '\n')
                    advance(1);
                continue;
            }

            int l = line, k = col;
            auto push = [&] (Tok t, size_t n) {
                result.push_back(Token{ t, s.substr(i, n), l, k });
                advance(n);
            };
            auto starts = [&] (const char * p) { return s.compare(i, std::char_traits<char>::length(p), p) == 0; };

            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t j = i + 1;
                while (j < s.size() && ident_char(s[j]))
                    ++j;
                push(c == '_' ? Tok::Null : Tok::Ident, j - i);
            }
            else if (std::isdigit(static_cast<unsigned char>(c))) {
                size_t j = i;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                    ++j;
                push(Tok::Int, j - i);
            }
            else if (c == '\'' || c == '"') {
                size_t j = i + 1;
                while (j < s.size() && s[j] != c && s[j] != '\n')
                    ++j;
                if (j >= s.size() || s[j] != c)
                    throw ParseError(ErrorCode::SyntaxError, src.file, l, k, "unterminated quoted constant");
                result.push_back(Token{ Tok::Quoted, s.substr(i + 1, j - i - 1), l, k });
                advance(j - i + 1);
            }
            else if (starts("/\\")) push(Tok::And, 2);
            else if (starts("\\/")) push(Tok::Or, 2);
            else if (starts("->")) push(Tok::Arrow, 2);
            else if (starts(":=")) push(Tok::Define, 2);
            else if (starts("!=")) push(Tok::Neq, 2);
            else if (c == '(') push(Tok::LParen, 1);
            else if (c == ')') push(Tok::RParen, 1);
            else if (c == '[') push(Tok::LBracket, 1);
            else if (c == ']') push(Tok::RBracket, 1);
            else if (c == ',') push(Tok::Comma, 1);
            else if (c == '.') push(Tok::Dot, 1);
            else if (c == '/') push(Tok::Slash, 1);
            else if (c == ':') push(Tok::Colon, 1);
            else if (c == '=') push(Tok::Eq, 1);
            else if (c == '~') push(Tok::Tilde, 1);
            else if (c == '*') push(Tok::Star, 1);
            else
                throw ParseError(ErrorCode::SyntaxError, src.file, l, k, string("unexpected character '") + c + "'");
        }
        result.push_back(Token{ Tok::End, "", line, col });
        return result;
    }

    class Parser
    {
        public:
            const SourceText & src;
            vector<Token> toks;
            size_t pos = 0;

            explicit Parser(const SourceText & s) : src(s), toks(lex(s)) { }

            auto peek(size_t ahead = 0) const -> const Token &
            {
                return toks[std::min(pos + ahead, toks.size() - 1)];
            }

            auto at(Tok t) const -> bool { return peek().kind == t; }

            auto at_word(const char * w) const -> bool
            {
                return peek().kind == Tok::Ident && peek().text == w;
            }

            [[noreturn]] auto fail(ErrorCode code, const Token & t, const string & msg) const -> void
            {
                throw ParseError(code, src.file, t.line, t.column, msg);
            }

            auto take() -> const Token &
            {
                const Token & t = toks[pos];
                if (pos + 1 < toks.size())
                    ++pos;
                return t;
            }

            auto expect(Tok t) -> const Token &
            {
                if (! at(t))
                    fail(ErrorCode::SyntaxError, peek(), "expected " + describe(t) + ", found " + describe(peek().kind)
                            + (peek().text.empty() ? "" : " '" + peek().text + "'"));
                return take();
            }

            auto accept(Tok t) -> bool
            {
                if (! at(t))
                    return false;
                take();
                return true;
            }

            auto expect_word(const char * w) -> void
            {
                if (! at_word(w))
                    fail(ErrorCode::SyntaxError, peek(), string("expected '") + w + "'");
                take();
            }

            auto integer() -> int
            {
                auto & t = expect(Tok::Int);
                return std::stoi(t.text);
            }
    };

    const set<string> keywords = { "forall", "exists", "true", "false", "source", "target", "tgd", "egd", "constraint" };

    auto check_arity(const Parser & p, const Token & at, const Schema & schema, const string & rel, size_t arity) -> void
    {
        auto i = schema.find(rel);
        if (i == schema.end())
            p.fail(ErrorCode::UnknownRelation, at, "unknown relation " + rel);
        if (size_t(i->second) != arity)
            p.fail(ErrorCode::ArityMismatch, at, rel + " has arity " + to_string(i->second) + ", used with " + to_string(arity));
    }

    // Term parsing for dependencies: identifiers are variables, quoted tokens constants.
    auto dependency_term(Parser & p) -> Term
    {
        if (p.at(Tok::Ident))
            return Term::var(p.take().text);
        if (p.at(Tok::Quoted) || p.at(Tok::Int))
            return Term::constant(p.take().text);
        if (p.at(Tok::Null))
            p.fail(ErrorCode::SchemaViolation, p.peek(), "nulls are not allowed in mappings");
        p.fail(ErrorCode::SyntaxError, p.peek(), "expected a term");
    }

    auto dependency_atom(Parser & p, const Schema & schema) -> std::pair<PatternAtom, Token>
    {
        Token at = p.expect(Tok::Ident);
        PatternAtom a{ at.text, { } };
        p.expect(Tok::LParen);
        a.args.push_back(dependency_term(p));
        while (p.accept(Tok::Comma))
            a.args.push_back(dependency_term(p));
        p.expect(Tok::RParen);
        check_arity(p, at, schema, a.relation, a.args.size());
        return { a, at };
    }

    class FormulaParser
    {
        public:
            Parser & p;
            const Schema & schema;
            vector<string> scope;

            auto in_scope(const string & n) const -> bool
            {
                return std::find(scope.begin(), scope.end(), n) != scope.end();
            }

            auto term() -> Term
            {
                if (p.at(Tok::Ident)) {
                    auto & t = p.take();
                    return in_scope(t.text) ? Term::var(t.text) : Term::constant(t.text);
                }
                if (p.at(Tok::Quoted) || p.at(Tok::Int))
                    return Term::constant(p.take().text);
                if (p.at(Tok::Null))
                    p.fail(ErrorCode::SchemaViolation, p.peek(), "nulls are not allowed in queries");
                p.fail(ErrorCode::SyntaxError, p.peek(), "expected a term");
            }

            auto variable_list() -> vector<string>
            {
                vector<string> vs;
                do {
                    auto & t = p.expect(Tok::Ident);
                    if (keywords.count(t.text))
                        p.fail(ErrorCode::SyntaxError, t, "keyword used as variable");
                    vs.push_back(t.text);
                } while (p.accept(Tok::Comma));
                return vs;
            }

            auto quantified() -> FormulaPtr
            {
                bool universal = p.at_word("forall");
                p.take();
                if (! universal && p.accept(Tok::LBracket)) {
                    int lo = p.integer();
                    p.expect(Tok::Comma);
                    int hi = p.accept(Tok::Star) ? -1 : p.integer();
                    p.expect(Tok::RBracket);
                    auto & v = p.expect(Tok::Ident);
                    p.expect(Tok::Colon);
                    scope.push_back(v.text);
                    auto body = formula();
                    scope.pop_back();
                    return Formula::count_exists(v.text, lo, hi, body);
                }
                auto vs = variable_list();
                p.expect(Tok::Colon);
                for (auto & v : vs)
                    scope.push_back(v);
                auto body = formula();
                scope.resize(scope.size() - vs.size());
                return universal ? Formula::forall(vs, body) : Formula::exists(vs, body);
            }

            auto unary() -> FormulaPtr
            {
                if (p.accept(Tok::Tilde))
                    return Formula::negate(unary());
                if (p.accept(Tok::LParen)) {
                    auto f = formula();
                    p.expect(Tok::RParen);
                    return f;
                }
                if (p.at_word("forall") || p.at_word("exists"))
                    return quantified();
                if (p.at_word("true") || p.at_word("false"))
                    return Formula::truth(p.take().text == "true");
                if (p.at(Tok::Ident) && p.peek(1).kind == Tok::LParen) {
                    Token at = p.take();
                    PatternAtom a{ at.text, { } };
                    p.expect(Tok::LParen);
                    a.args.push_back(term());
                    while (p.accept(Tok::Comma))
                        a.args.push_back(term());
                    p.expect(Tok::RParen);
                    check_arity(p, at, schema, a.relation, a.args.size());
                    return Formula::make_atom(std::move(a));
                }
                auto lhs = term();
                if (p.accept(Tok::Eq))
                    return Formula::equal(lhs, term());
                if (p.accept(Tok::Neq))
                    return Formula::negate(Formula::equal(lhs, term()));
                p.fail(ErrorCode::SyntaxError, p.peek(), "expected '=' or '!=' after a term");
            }

            auto conjunction() -> FormulaPtr
            {
                vector<FormulaPtr> cs{ unary() };
                while (p.accept(Tok::And))
                    cs.push_back(unary());
                return Formula::conjunction(std::move(cs));
            }

            auto disjunction() -> FormulaPtr
            {
                vector<FormulaPtr> cs{ conjunction() };
                while (p.accept(Tok::Or))
                    cs.push_back(conjunction());
                return Formula::disjunction(std::move(cs));
            }

            auto formula() -> FormulaPtr
            {
                auto lhs = disjunction();
                if (p.accept(Tok::Arrow))
                    return Formula::implies(lhs, formula());
                return lhs;
            }
    };

    auto combined(const SchemaMapping & m) -> Schema
    {
        Schema s = m.source;
        s.insert(m.target.begin(), m.target.end());
        return s;
    }
}

auto dx::parse_mapping(const SourceText & src) -> SchemaMapping
{
    Parser p(src);
    SchemaMapping m;
    bool constraints_seen = false;

    while (! p.at(Tok::End)) {
        Token head = p.peek();
        if (p.at_word("source") || p.at_word("target")) {
            if (constraints_seen)
                p.fail(ErrorCode::SyntaxError, head, "relation declarations must precede constraints");
            bool source = head.text == "source";
            p.take();
            do {
                Token rel = p.expect(Tok::Ident);
                p.expect(Tok::Slash);
                Token ar = p.peek();
                int arity = p.integer();
                if (arity < 1)
                    p.fail(ErrorCode::ArityMismatch, ar, "arity must be positive");
                if (m.source.count(rel.text) || m.target.count(rel.text))
                    p.fail(ErrorCode::SchemaViolation, rel, "relation " + rel.text + " declared twice");
                (source ? m.source : m.target)[rel.text] = arity;
            } while (p.accept(Tok::Comma));
            p.expect(Tok::Dot);
        }
        else if (p.at_word("tgd")) {
            constraints_seen = true;
            p.take();
            Schema all = combined(m);
            Tgd t;
            vector<Token> body_at, head_at;
            do {
                auto [a, at] = dependency_atom(p, all);
                t.body.push_back(a);
                body_at.push_back(at);
            } while (p.accept(Tok::Comma));
            p.expect(Tok::Arrow);
            if (p.at_word("exists")) {
                p.take();
                do
                    t.existential.push_back(p.expect(Tok::Ident).text);
                while (p.accept(Tok::Comma));
                p.expect(Tok::Colon);
            }
            do {
                auto [a, at] = dependency_atom(p, all);
                t.head.push_back(a);
                head_at.push_back(at);
            } while (p.accept(Tok::Comma));
            p.expect(Tok::Dot);

            bool source_body = m.source.count(t.body[0].relation);
            for (size_t i = 0 ; i < t.body.size() ; ++i)
                if (bool(m.source.count(t.body[i].relation)) != source_body)
                    p.fail(ErrorCode::SchemaViolation, body_at[i], "tgd body mixes source and target relations");
            for (size_t i = 0 ; i < t.head.size() ; ++i)
                if (! m.target.count(t.head[i].relation))
                    p.fail(ErrorCode::SchemaViolation, head_at[i], "tgd head uses non-target relation " + t.head[i].relation);

            auto bv = t.body_variables();
            for (auto & z : t.existential)
                if (std::find(bv.begin(), bv.end(), z) != bv.end())
                    p.fail(ErrorCode::SchemaViolation, head, "existential variable " + z + " also occurs in the body");
            for (size_t i = 0 ; i < t.head.size() ; ++i)
                for (auto & v : t.head[i].variables())
                    if (std::find(bv.begin(), bv.end(), v) == bv.end()
                            && std::find(t.existential.begin(), t.existential.end(), v) == t.existential.end())
                        p.fail(ErrorCode::SchemaViolation, head_at[i], "head variable " + v + " is neither in the body nor existentially quantified");
            for (auto & z : t.existential) {
                bool used = false;
                for (auto & a : t.head)
                    for (auto & v : a.variables())
                        used = used || v == z;
                if (! used)
                    p.fail(ErrorCode::SchemaViolation, head, "existential variable " + z + " does not occur in the head");
            }
            (source_body ? m.st_tgds : m.target_tgds).push_back(std::move(t));
        }
        else if (p.at_word("egd")) {
            constraints_seen = true;
            p.take();
            Egd e;
            do {
                auto [a, at] = dependency_atom(p, m.target);
                e.body.push_back(a);
            } while (p.accept(Tok::Comma));
            p.expect(Tok::Arrow);
            Token lt = p.peek();
            e.lhs = dependency_term(p);
            p.expect(Tok::Eq);
            Token rt = p.peek();
            e.rhs = dependency_term(p);
            p.expect(Tok::Dot);
            vector<string> bv;
            for (auto & a : e.body)
                for (auto & v : a.variables())
                    bv.push_back(v);
            for (auto [t, at] : { std::pair{ e.lhs, lt }, std::pair{ e.rhs, rt } })
                if (t.is_var && std::find(bv.begin(), bv.end(), t.name) == bv.end())
                    p.fail(ErrorCode::UnboundVariable, at, "egd variable " + t.name + " does not occur in the body");
            m.egds.push_back(std::move(e));
        }
        else if (p.at_word("constraint")) {
            constraints_seen = true;
            p.take();
            Schema all = combined(m);
            FormulaParser fp{ p, all, { } };
            m.constraints.push_back(fp.formula());
            p.expect(Tok::Dot);
        }
        else
            p.fail(ErrorCode::SyntaxError, head, "expected 'source', 'target', 'tgd', 'egd' or 'constraint'");
    }
    return m;
}

auto dx::parse_instance(const SourceText & src, const Schema & schema) -> Instance
{
    Parser p(src);
    vector<Atom> atoms;
    map<string, std::uint64_t> null_ids;

    while (! p.at(Tok::End)) {
        Token at = p.expect(Tok::Ident);
        Atom a{ at.text, { } };
        p.expect(Tok::LParen);
        do {
            if (p.at(Tok::Null)) {
                auto & t = p.take();
                auto [i, fresh] = null_ids.emplace(t.text, null_ids.size() + 1);
                a.args.push_back(Value::null(i->second));
            }
            else if (p.at(Tok::Ident) || p.at(Tok::Quoted) || p.at(Tok::Int))
                a.args.push_back(Value::constant(p.take().text));
            else
                p.fail(ErrorCode::SyntaxError, p.peek(), "expected a constant or a null");
        } while (p.accept(Tok::Comma));
        p.expect(Tok::RParen);
        check_arity(p, at, schema, a.relation, a.args.size());
        atoms.push_back(std::move(a));
        if (! p.accept(Tok::Dot))
            p.expect(Tok::Comma);
    }
    return Instance(std::move(atoms));
}

auto dx::parse_query(const SourceText & src, const Schema & schema) -> FOQuery
{
    Parser p(src);
    FOQuery q;
    q.name = p.expect(Tok::Ident).text;
    p.expect(Tok::LParen);
    if (! p.at(Tok::RParen)) {
        do {
            auto & t = p.expect(Tok::Ident);
            if (std::find(q.free_variables.begin(), q.free_variables.end(), t.text) != q.free_variables.end())
                p.fail(ErrorCode::SyntaxError, t, "free variable " + t.text + " listed twice");
            q.free_variables.push_back(t.text);
        } while (p.accept(Tok::Comma));
    }
    p.expect(Tok::RParen);
    p.expect(Tok::Define);
    FormulaParser fp{ p, schema, q.free_variables };
    q.body = fp.formula();
    p.expect(Tok::Dot);
    if (! p.at(Tok::End))
        p.fail(ErrorCode::SyntaxError, p.peek(), "trailing input after the query");
    return q;
}

namespace
{
    auto plain_identifier(const string & s) -> bool
    {
        if (s.empty() || ! std::isalpha(static_cast<unsigned char>(s[0])) || keywords.count(s))
            return false;
        return std::all_of(s.begin(), s.end(), ident_char);
    }

    auto all_digits(const string & s) -> bool
    {
        return ! s.empty() && std::all_of(s.begin(), s.end(), [] (char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    }

    auto quoted(const string & s) -> string
    {
        return s.find('"') == string::npos ? "\"" + s + "\"" : "'" + s + "'";
    }

    auto format_dependency_term(const Term & t) -> string
    {
        if (t.is_var)
            return t.name;
        return all_digits(t.name) ? t.name : quoted(t.name);
    }

    auto format_pattern(const PatternAtom & a, const std::function<string (const Term &)> & term) -> string
    {
        string r = a.relation + "(";
        for (size_t i = 0 ; i < a.args.size() ; ++i)
            r += (i ? "," : "") + term(a.args[i]);
        return r + ")";
    }

    auto join_patterns(const vector<PatternAtom> & atoms, const std::function<string (const Term &)> & term) -> string
    {
        string r;
        for (size_t i = 0 ; i < atoms.size() ; ++i)
            r += (i ? ", " : "") + format_pattern(atoms[i], term);
        return r;
    }

    struct FormulaPrinter
    {
        set<string> bound;

        auto term(const Term & t) const -> string
        {
            if (t.is_var)
                return t.name;
            if (all_digits(t.name) || (plain_identifier(t.name) && ! bound.count(t.name)))
                return t.name;
            return quoted(t.name);
        }

        // precedence: 0 formula, 1 disjunction, 2 conjunction, 3 unary
        auto print(const Formula & f, int context) -> string
        {
            auto wrap = [&] (int level, const string & s) { return level < context ? "(" + s + ")" : s; };
            auto vars = [] (const vector<string> & vs) {
                string r;
                for (size_t i = 0 ; i < vs.size() ; ++i)
                    r += (i ? ", " : "") + vs[i];
                return r;
            };
            switch (f.kind) {
                case FormulaKind::True: return "true";
                case FormulaKind::False: return "false";
                case FormulaKind::Atom: return format_pattern(f.atom, [&] (const Term & t) { return term(t); });
                case FormulaKind::Equal: return term(f.lhs) + " = " + term(f.rhs);
                case FormulaKind::Not:
                    if (f.children[0]->kind == FormulaKind::Equal)
                        return term(f.children[0]->lhs) + " != " + term(f.children[0]->rhs);
                    return "~" + print(*f.children[0], 3);
                case FormulaKind::And:
                case FormulaKind::Or: {
                    bool conj = f.kind == FormulaKind::And;
                    string r;
                    for (size_t i = 0 ; i < f.children.size() ; ++i)
                        r += (i ? (conj ? " /\\ " : " \\/ ") : "") + print(*f.children[i], conj ? 3 : 2);
                    return wrap(conj ? 2 : 1, r);
                }
                case FormulaKind::Implies:
                    return wrap(0, print(*f.children[0], 1) + " -> " + print(*f.children[1], 0));
                case FormulaKind::Exists:
                case FormulaKind::Forall:
                case FormulaKind::CountExists: {
                    string q = f.kind == FormulaKind::Forall ? "forall " : f.kind == FormulaKind::Exists ? "exists "
                        : "exists[" + to_string(f.lo) + "," + (f.hi < 0 ? string("*") : to_string(f.hi)) + "] ";
                    auto saved = bound;
                    for (auto & v : f.variables)
                        bound.insert(v);
                    string r = q + vars(f.variables) + ": " + print(*f.children[0], 0);
                    bound = saved;
                    return wrap(0, r);
                }
            }
            return "";
        }
    };
}

auto dx::format_mapping(const SchemaMapping & m) -> string
{
    string r;
    auto decls = [&] (const char * word, const Schema & s) {
        if (s.empty())
            return;
        r += word;
        bool first = true;
        for (auto & [name, arity] : s) {
            r += (first ? " " : ", ") + name + "/" + to_string(arity);
            first = false;
        }
        r += ".\n";
    };
    decls("source", m.source);
    decls("target", m.target);
    for (auto * tgds : { &m.st_tgds, &m.target_tgds })
        for (auto & t : *tgds) {
            r += "tgd " + join_patterns(t.body, format_dependency_term) + " -> ";
            if (! t.existential.empty()) {
                r += "exists ";
                for (size_t i = 0 ; i < t.existential.size() ; ++i)
                    r += (i ? ", " : "") + t.existential[i];
                r += ": ";
            }
            r += join_patterns(t.head, format_dependency_term) + ".\n";
        }
    for (auto & e : m.egds)
        r += "egd " + join_patterns(e.body, format_dependency_term) + " -> " + format_dependency_term(e.lhs)
            + " = " + format_dependency_term(e.rhs) + ".\n";
    for (auto & c : m.constraints)
        r += "constraint " + format_formula(*c) + ".\n";
    return r;
}

auto dx::format_instance(const Instance & instance) -> string
{
    string r;
    for (auto & a : instance) {
        r += a.relation + "(";
        for (size_t i = 0 ; i < a.args.size() ; ++i) {
            auto & v = a.args[i];
            string text = v.is_null() ? v.to_string() : (plain_identifier(v.name()) || all_digits(v.name())) ? v.name() : quoted(v.name());
            r += (i ? "," : "") + text;
        }
        r += ").\n";
    }
    return r;
}

auto dx::format_formula(const Formula & f) -> string
{
    FormulaPrinter p;
    return p.print(f, 0);
}

auto dx::format_query(const FOQuery & q) -> string
{
    FormulaPrinter p;
    p.bound.insert(q.free_variables.begin(), q.free_variables.end());
    string r = q.name + "(";
    for (size_t i = 0 ; i < q.free_variables.size() ; ++i)
        r += (i ? "," : "") + q.free_variables[i];
    return r + ") := " + p.print(*q.body, 0) + ".";
}

auto dx::format_tuple(const Tuple & t) -> string
{
    string r = "(";
    for (size_t i = 0 ; i < t.size() ; ++i)
        r += (i ? "," : "") + t[i].to_string();
    return r + ")";
}

auto dx::tuples_to_json(const TupleSet & ts) -> json
{
    json arr = json::array();
    for (auto & t : ts) {
        json row = json::array();
        for (auto & v : t)
            row.push_back(v.to_string());
        arr.push_back(row);
    }
    return arr;
}

auto dx::answers_json(const string & query, const string & semantics, const TupleSet & ts, const json & meta) -> json
{
    json j;
    j["query"] = query;
    j["semantics"] = semantics;
    j["answers"] = tuples_to_json(ts);
    j["meta"] = meta;
    return j;
}
