#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <memory>
#include <thread>
#include <vector>

#include "httplib.h"

#include "cf/backends/audit.hpp"
#include "cf/backends/client.hpp"
#include "cf/backends/endpoint.hpp"
#include "cf/backends/transport.hpp"
#include "cf/common/error.hpp"
#include "fixtures.hpp"
#include "mocks.hpp"

namespace cf::backends {
namespace {

using namespace cf::testing;
using std::chrono::milliseconds;

std::vector<std::string> texts(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("frase " + std::to_string(i));
  return out;
}

TEST(Endpoint, FromJsonDefaultsAndErrors) {
  const auto e = endpoint_from_json("mt", Json::parse(R"({"kind":"translate","base_url":"http://h:1"})"));
  EXPECT_EQ(e.batch_size, 16u);
  EXPECT_EQ(e.max_retries, 3);
  EXPECT_EQ(e.timeout, milliseconds(30000));
  EXPECT_EQ(to_json(e)["kind"], "translate");
  EXPECT_EQ(endpoint_from_json("mt", to_json(e)).backoff_max, e.backoff_max);

  EXPECT_THROW(endpoint_from_json("x", Json::parse(R"({"kind":"translate"})")), ValidationError);
  EXPECT_THROW(endpoint_from_json("x", Json::parse(R"({"kind":"fax","base_url":"u"})")), ValidationError);
  EXPECT_THROW(endpoint_from_json("x", Json::parse(R"({"kind":"embed","base_url":"u","batch_size":0})")),
               ValidationError);
  EXPECT_THROW(endpoint_from_json("x", Json::parse(R"({"kind":"embed","base_url":"u","colour":1})")),
               ValidationError);
  EXPECT_THROW(endpoint_from_json("x", Json::parse(R"({"kind":"embed","base_url":"u","max_retries":1.5})")),
               ValidationError);
}

TEST(Endpoint, ApiKeyVariable) {
  EXPECT_EQ(api_key_variable("nllb-ft"), "CF_NLLB_FT_KEY");
  ::setenv("CF_KEYED_KEY", "s3cret", 1);
  auto transport = std::make_shared<MockTransport>([](const HttpRequest& r) {
    for (const auto& [k, v] : r.headers)
      if (k == "Authorization" && v == "Bearer s3cret") return ok({{"text", "yes"}});
    return ok({{"text", "no"}});
  });
  BackendClient client(endpoint("keyed", EndpointKind::chat), transport, nullptr, no_sleep());
  EXPECT_EQ(generate(client, "hi"), "yes");
  ::unsetenv("CF_KEYED_KEY");
  EXPECT_FALSE(api_key("keyed"));
}

TEST(Client, TranslateChunksAndPreservesOrder) {
  auto transport = std::make_shared<MockTransport>(tagging_translator("T:"));
  BackendClient client(endpoint("mt", EndpointKind::translate, 4, 0, 3), transport, nullptr, no_sleep());
  const auto in = texts(10);
  const auto out = translate_batch(client, in, "ita_Latn", "lld_Latn");
  ASSERT_EQ(out.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(out[i], "T:" + in[i]);
  EXPECT_EQ(transport->calls(), 3u);
  EXPECT_EQ(transport->max_batch(), 4u);
  const auto body = Json::parse(transport->bodies().front());
  EXPECT_EQ(body["src_lang"], "ita_Latn");
  EXPECT_EQ(body["tgt_lang"], "lld_Latn");
}

TEST(Client, RetriesWithCappedExponentialBackoff) {
  auto transport = std::make_shared<MockTransport>(failing_first(echo_translator(), 4, 503));
  auto e = endpoint("mt", EndpointKind::translate, 8, 5);
  e.backoff_initial = milliseconds(100);
  e.backoff_multiplier = 2.0;
  e.backoff_max = milliseconds(300);
  std::vector<milliseconds> delays;
  BackendClient client(e, transport, nullptr, [&](milliseconds d) { delays.push_back(d); });
  const auto out = translate_batch(client, texts(3), "a", "b");
  EXPECT_EQ(out, texts(3));
  EXPECT_EQ(delays, (std::vector<milliseconds>{milliseconds(100), milliseconds(200), milliseconds(300),
                                               milliseconds(300)}));
}

TEST(Client, GivesUpWithBatchRange) {
  auto transport = std::make_shared<MockTransport>(failing_after(echo_translator(), 1, 500));
  BackendClient client(endpoint("mt", EndpointKind::translate, 4, 2), transport, nullptr, no_sleep());
  try {
    translate_batch(client, texts(6), "a", "b");
    FAIL() << "expected TransportError";
  } catch (const TransportError& e) {
    EXPECT_EQ(e.begin(), 4u);
    EXPECT_EQ(e.end(), 6u);
    EXPECT_NE(std::string(e.what()).find("[4, 6)"), std::string::npos);
  }
  EXPECT_EQ(transport->calls(), 1u + 3u);
}

TEST(Client, ClientErrorsAreNotRetried) {
  auto transport = std::make_shared<MockTransport>([](const HttpRequest&) { return status(400); });
  BackendClient client(endpoint("mt", EndpointKind::translate, 4, 5), transport, nullptr, no_sleep());
  EXPECT_THROW(translate_batch(client, texts(2), "a", "b"), TransportError);
  EXPECT_EQ(transport->calls(), 1u);
}

TEST(Client, ProtocolViolations) {
  const auto run = [](Handler h, EndpointKind kind = EndpointKind::translate) {
    auto transport = std::make_shared<MockTransport>(std::move(h));
    BackendClient client(endpoint("x", kind, 4, 0), transport, nullptr, no_sleep());
    if (kind == EndpointKind::translate) translate_batch(client, texts(3), "a", "b");
    else embed_batch(client, texts(3));
  };
  EXPECT_THROW(run([](const HttpRequest&) { return ok({{"translations", {"a"}}}); }), ProtocolError);
  EXPECT_THROW(run([](const HttpRequest&) { return ok({{"other", 1}}); }), ProtocolError);
  EXPECT_THROW(run([](const HttpRequest&) { return HttpResponse{200, "not json", ""}; }), ProtocolError);
  EXPECT_THROW(run([](const HttpRequest&) { return ok({{"translations", {1, 2, 3}}}); }), ProtocolError);
  EXPECT_THROW(run([](const HttpRequest&) { return ok({{"vectors", {{1, 2}, {1, 2}, {1}}}}); },
                   EndpointKind::embed),
               ProtocolError);
  EXPECT_THROW(run([](const HttpRequest&) { return ok({{"vectors", {{1, 2}, {1, 2}, {1, nullptr}}}}); },
                   EndpointKind::embed),
               ProtocolError);
  EXPECT_THROW(run([](const HttpRequest&) { return ok({{"vectors", {{1, 2}, {1, 2}, {1, 2}}}, {"dim", 3}}); },
                   EndpointKind::embed),
               ProtocolError);
}

TEST(Client, EmbedDimensionsMustAgreeAcrossBatches) {
  std::atomic<int> n{0};
  auto transport = std::make_shared<MockTransport>([&](const HttpRequest& r) {
    const auto count = Json::parse(r.body)["texts"].size();
    const std::size_t dim = n++ == 0 ? 2 : 3;
    return ok({{"vectors", Json::array_t(count, Json(std::vector<double>(dim, 1.0)))}});
  });
  BackendClient client(endpoint("e", EndpointKind::embed, 2, 0), transport, nullptr, no_sleep());
  EXPECT_THROW(embed_batch(client, texts(4)), ProtocolError);
}

TEST(Client, KindMismatchAndEmptyInput) {
  auto transport = std::make_shared<MockTransport>(echo_translator());
  BackendClient client(endpoint("mt", EndpointKind::translate), transport, nullptr, no_sleep());
  EXPECT_THROW(embed_batch(client, texts(1)), ValidationError);
  EXPECT_THROW(generate(client, "x"), ValidationError);
  EXPECT_THROW(translate_batch(client, {}, "a", "b"), ValidationError);
  EXPECT_EQ(transport->calls(), 0u);
}

TEST(Client, RewriteSendsOnePromptPerText) {
  auto transport = std::make_shared<MockTransport>(identity_chat());
  BackendClient client(endpoint("chat", EndpointKind::chat, 4, 0, 2), transport, nullptr, no_sleep());
  const auto in = texts(5);
  EXPECT_EQ(llm_rewrite(client, in, "Riscrivi:"), in);
  EXPECT_EQ(transport->calls(), 5u);
  EXPECT_EQ(Json::parse(transport->bodies().front())["prompt"].get<std::string>().rfind("Riscrivi:\n\n", 0), 0u);
  EXPECT_THROW(llm_rewrite(client, in, ""), ValidationError);
}

TEST(Client, AuditLogRecordsEveryAttempt) {
  TempDir dir;
  auto audit = std::make_shared<AuditLog>(dir / "audit.jsonl");
  auto transport = std::make_shared<MockTransport>(failing_first(echo_translator(), 1));
  BackendClient client(endpoint("mt", EndpointKind::translate, 8, 1), transport, audit, no_sleep());
  translate_batch(client, texts(2), "a", "b");
  const auto lines = jsonl::read_objects(dir / "audit.jsonl");
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].second["status"], 503);
  EXPECT_EQ(lines[1].second["attempt"], 1);
  EXPECT_EQ(lines[1].second["status"], 200);
}

class LocalServer {
public:
  LocalServer() {
    server_.Post("/v1/translate", [](const httplib::Request& req, httplib::Response& res) {
      const auto body = Json::parse(req.body);
      Json out;
      out["translations"] = Json::array();
      for (const auto& t : body["texts"]) out["translations"].push_back(reverse_words(t.get<std::string>()));
      res.set_content(out.dump(), "application/json");
    });
    server_.Post("/v1/embed", [this](const httplib::Request&, httplib::Response& res) {
      if (flaky_++ == 0) {
        res.status = 503;
        return;
      }
      res.set_content(R"({"vectors":[[1,0],[0,1]],"dim":2})", "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/"; }

private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> flaky_{0};
};

TEST(HttpTransport, TalksToALocalServer) {
  LocalServer server;
  auto mt = endpoint("mt", EndpointKind::translate, 2, 0, 2);
  mt.base_url = server.url();
  const auto factory = http_transport_factory();
  BackendClient client(mt, factory(mt), nullptr, no_sleep());
  const std::vector<std::string> in{"a b c", "uno due", "x"};
  EXPECT_EQ(translate_batch(client, in, "s", "t"), (std::vector<std::string>{"c b a", "due uno", "x"}));

  auto em = endpoint("embed", EndpointKind::embed, 2, 1);
  em.base_url = server.url();
  BackendClient embedder(em, factory(em), nullptr, no_sleep());
  const auto vecs = embed_batch(embedder, std::vector<std::string>{"p", "q"});
  EXPECT_EQ(vecs[1], metrics::EmbeddingVector({0.0, 1.0}));
}

TEST(HttpTransport, ConnectionFailureIsStatusZero) {
  HttpTransport transport("http://127.0.0.1:1", milliseconds(500));
  const auto r = transport.post({"/translate", "{}", {}});
  EXPECT_EQ(r.status, 0);
  EXPECT_FALSE(r.error.empty());
  EXPECT_THROW(HttpTransport("no-scheme", milliseconds(10)), ValidationError);
}

}  // namespace
}  // namespace cf::backends
