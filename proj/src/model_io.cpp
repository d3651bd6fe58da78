#include "netids/model_io.hpp"

#include <cstring>
#include <fstream>

#include "netids/errors.hpp"

namespace netids {

namespace {

constexpr uint8_t kKindTree = 1;
constexpr uint8_t kKindForest = 2;
constexpr uint8_t kKindLogistic = 3;

class Writer {
public:
    void u8(uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(uint32_t v) { raw(&v, sizeof v); }
    void u64(uint64_t v) { raw(&v, sizeof v); }
    void f64(double v) { raw(&v, sizeof v); }
    void i32(int32_t v) { raw(&v, sizeof v); }
    void raw(const void* p, size_t len) {
        const char* c = static_cast<const char*>(p);
        buf_.append(c, len);
    }
    std::string take() { return std::move(buf_); }

private:
    std::string buf_;
};

class Reader {
public:
    explicit Reader(std::string_view bytes) : bytes_(bytes) {}
    uint8_t u8() { return static_cast<uint8_t>(take(1)[0]); }
    uint32_t u32() { return read<uint32_t>(); }
    uint64_t u64() { return read<uint64_t>(); }
    double f64() { return read<double>(); }
    int32_t i32() { return read<int32_t>(); }
    bool done() const { return pos_ == bytes_.size(); }

private:
    template <class T>
    T read() {
        T v;
        std::memcpy(&v, take(sizeof v).data(), sizeof v);
        return v;
    }
    std::string_view take(size_t len) {
        if (pos_ + len > bytes_.size()) throw CorruptModelError("truncated file");
        std::string_view out = bytes_.substr(pos_, len);
        pos_ += len;
        return out;
    }
    std::string_view bytes_;
    size_t pos_ = 0;
};

void write_tree(Writer& w, const DecisionTreeModel& t) {
    w.u32(t.width);
    w.u32(static_cast<uint32_t>(t.nodes.size()));
    for (const TreeNode& n : t.nodes) {
        w.i32(n.feature);
        w.f64(n.threshold);
        w.i32(n.left);
        w.i32(n.right);
        w.f64(n.p_positive);
        w.u32(n.samples);
    }
}

DecisionTreeModel read_tree(Reader& r) {
    DecisionTreeModel t;
    t.width = r.u32();
    const uint32_t count = r.u32();
    t.nodes.resize(count);
    for (TreeNode& n : t.nodes) {
        n.feature = r.i32();
        n.threshold = r.f64();
        n.left = r.i32();
        n.right = r.i32();
        n.p_positive = r.f64();
        n.samples = r.u32();
    }
    if (t.nodes.empty()) throw CorruptModelError("tree with no nodes");
    for (const TreeNode& n : t.nodes) {
        if (n.is_leaf()) continue;
        if (n.left < 0 || n.right < 0 || static_cast<uint32_t>(n.left) >= count ||
            static_cast<uint32_t>(n.right) >= count)
            throw CorruptModelError("node child out of range");
        if (static_cast<uint32_t>(n.feature) >= t.width)
            throw CorruptModelError("split feature out of range");
    }
    return t;
}

}  // namespace

std::string serialize_model(const ClassifierModel& m, uint64_t schema_fp) {
    Writer w;
    w.raw(kModelMagic, sizeof kModelMagic);
    w.u32(kModelFormatVersion);
    if (const auto* tree = std::get_if<DecisionTreeModel>(&m)) {
        w.u8(kKindTree);
        w.u64(schema_fp);
        write_tree(w, *tree);
    } else if (const auto* forest = std::get_if<RandomForestModel>(&m)) {
        w.u8(kKindForest);
        w.u64(schema_fp);
        w.u32(forest->width);
        w.f64(forest->positive_prior);
        w.u32(static_cast<uint32_t>(forest->trees.size()));
        for (const DecisionTreeModel& t : forest->trees) write_tree(w, t);
    } else {
        const auto& logistic = std::get<LogisticModel>(m);
        w.u8(kKindLogistic);
        w.u64(schema_fp);
        w.f64(logistic.bias);
        w.u32(static_cast<uint32_t>(logistic.weights.size()));
        for (double wt : logistic.weights) w.f64(wt);
    }
    return w.take();
}

ModelFile deserialize_model(std::string_view bytes) {
    if (bytes.size() < sizeof kModelMagic ||
        std::memcmp(bytes.data(), kModelMagic, sizeof kModelMagic) != 0)
        throw CorruptModelError("bad magic bytes");
    Reader r(bytes.substr(sizeof kModelMagic));
    const uint32_t version = r.u32();
    if (version != kModelFormatVersion) throw VersionMismatchError(version);

    ModelFile out;
    const uint8_t kind = r.u8();
    out.schema_fingerprint = r.u64();
    if (kind == kKindTree) {
        out.model = read_tree(r);
    } else if (kind == kKindForest) {
        RandomForestModel f;
        f.width = r.u32();
        f.positive_prior = r.f64();
        const uint32_t count = r.u32();
        if (count == 0) throw CorruptModelError("forest with no trees");
        f.trees.reserve(count);
        for (uint32_t i = 0; i < count; ++i) f.trees.push_back(read_tree(r));
        out.model = std::move(f);
    } else if (kind == kKindLogistic) {
        LogisticModel l;
        l.bias = r.f64();
        const uint32_t d = r.u32();
        l.weights.resize(d);
        for (double& w : l.weights) w = r.f64();
        out.model = std::move(l);
    } else {
        throw CorruptModelError("unknown learner kind " + std::to_string(kind));
    }
    if (!r.done()) throw CorruptModelError("trailing bytes");
    return out;
}

void save_model(const ClassifierModel& m, uint64_t schema_fp, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file " + path);
    const std::string bytes = serialize_model(m, schema_fp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_model(bytes);
}

namespace {

uint64_t fnv1a(const void* data, size_t len, uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

uint64_t schema_fingerprint(const FeatureSchema& schema) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& f : schema.features()) {
        h = fnv1a(f.name.data(), f.name.size(), h);
        h = fnv1a("\n", 1, h);
    }
    return h;
}

uint64_t model_hash(const ClassifierModel& m) {
    const std::string bytes = serialize_model(m, 0);
    return fnv1a(bytes.data(), bytes.size(), 0xcbf29ce484222325ULL);
}

}  // namespace netids
