#include <cstdio>
#include <filesystem>
#include <thread>

#include "doctest.h"
#include "efk/service/http.hpp"
#include "efk/service/session.hpp"
#include "httplib.h"

using namespace efk;
using namespace efk::service;

namespace {

Json order_spec(const char* a, const char* b, const char* clock) {
  return {{"kind", "EFD"}, {"A", a}, {"B", b}, {"clock", clock}, {"engine", "II"}, {"strategy", "identity"}};
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return std::string(code_name(e.code()));
  }
  return "";
}

}  // namespace

TEST_SUITE("service") {
  TEST_CASE("creating sessions") {
    SessionStore store;
    Json s = store.create(order_spec("order:w+1", "order:w+1", "w"));
    CHECK(s["status"] == "AwaitingI");
    CHECK(s["id"] == "s1");
    CHECK(s["transcript"]["rounds"].empty());

    Json done = store.create(order_spec("order:3", "order:5", "0"));
    CHECK(done["status"] == "Finished");
    CHECK(done["verdict"] == "II_wins");

    CHECK(code_of([&] { store.create(order_spec("lattice:3", "order:3", "2")); }) == "UNSUPPORTED_STRUCTURE");
    CHECK(code_of([&] { store.create(Json{{"kind", "EFD"}}); }) == "MALFORMED_SPEC");
  }

  TEST_CASE("engine echoes a legal move") {
    SessionStore store;
    std::string id = store.create(order_spec("order:w+1", "order:w+1", "w"))["id"];
    Json st = store.post_move(id, {{"clock", "3"}, {"side", "A"}, {"element", "w"}});
    REQUIRE(st["transcript"]["rounds"].size() == 1);
    CHECK(st["transcript"]["rounds"][0]["answer"] == "w");
    CHECK(st["status"] == "AwaitingI");
    CHECK(code_of([&] { store.post_move(id, {{"clock", "3"}, {"side", "A"}, {"element", "1"}}); }) ==
          "CLOCK_NOT_DECREASING");
    CHECK(code_of([&] { store.post_move(id, {{"clock", "2"}, {"side", "A"}, {"element", "w+5"}}); }) ==
          "ELEMENT_NOT_IN_STRUCTURE");
    CHECK(code_of([&] { store.post_move(id, {{"answer", "1"}}); }) != "");
    // Rejected moves leave the session untouched.
    CHECK(store.get(id)["transcript"]["rounds"].size() == 1);
  }

  TEST_CASE("PI legality codes") {
    SessionStore store;
    Json spec{{"kind", "PI"}, {"A", "algebra:2"}, {"B", "algebra:2"}, {"clock", "3"}, {"engine", "II"}, {"strategy", "echo"}};
    std::string id = store.create(spec)["id"];
    CHECK(code_of([&] { store.post_move(id, {{"clock", "2"}, {"side", "A"}, {"probe", {"1", "0"}}, {"eps", "0"}}); }) ==
          "EPS_NON_POSITIVE");
    Json st = store.post_move(id, {{"clock", "2"}, {"side", "A"}, {"probe", {"1", "0"}}, {"eps", "1/2"}});
    CHECK(st["transcript"]["rounds"].size() == 1);
    st = store.post_move(id, {{"clock", "0"}, {"side", "B"}, {"probe", {"0", "1"}}, {"eps", 1}});
    CHECK(st["status"] == "Finished");
    CHECK(st["verdict"] == "II_wins");
    Json ex = store.export_session(id);
    CHECK(ex["witness"].contains("bijection"));
  }

  TEST_CASE("finished sessions export a witness and stay finished") {
    SessionStore store;
    std::string id = store.create(order_spec("order:w+1", "order:w+1", "2"))["id"];
    store.post_move(id, {{"clock", "1"}, {"side", "B"}, {"element", "4"}});
    store.post_move(id, {{"clock", "0"}, {"side", "A"}, {"element", "w"}});
    Json ex = store.export_session(id);
    CHECK(ex["status"] == "Finished");
    CHECK(ex["verdict"] == "II_wins");
    CHECK(ex["witness"].is_object());
    CHECK(ex["log"].size() == 2);
    CHECK(code_of([&] { store.post_move(id, {{"clock", "0"}, {"side", "A"}, {"element", "1"}}); }) == "GAME_OVER");
    CHECK(code_of([&] { store.get("s99"); }) == "UNKNOWN_SESSION");
    CHECK(http_status(ErrorCode::UnknownSession) == 404);
  }

  TEST_CASE("replaying a transcript reproduces it") {
    Json spec = order_spec("group:w+1", "group:w+1", "3");
    spec["strategy"] = "transfer";
    spec["engine"] = "none";
    std::unique_ptr<Session> s = Session::create(spec);
    s->post_move({{"clock", "2"}, {"side", "A"}, {"element", {{"ambient", "w"}, {"breakpoints", {"0", "3", "w"}}, {"values", {"1", "-1/2"}}}}});
    s->post_move({{"answer", {{"ambient", "w"}, {"breakpoints", {"0", "3", "w"}}, {"values", {"1", "-1/2"}}}}});
    Json t = s->state()["transcript"];
    CHECK(replay_transcript(spec, t).dump() == t.dump());

    SessionStore store;
    Json eng = order_spec("order:w*2+1", "order:w*2+1", "w");
    std::string id = store.create(eng)["id"];
    store.post_move(id, {{"clock", "5"}, {"side", "B"}, {"element", "w+1"}});
    store.post_move(id, {{"clock", "4"}, {"side", "A"}, {"element", "3"}});
    Json t2 = store.get(id)["transcript"];
    CHECK(replay_transcript(eng, t2).dump() == t2.dump());
  }

  TEST_CASE("snapshots round-trip") {
    SessionStore store;
    std::string a = store.create(order_spec("order:w+1", "order:w+1", "w"))["id"];
    std::string b = store.create(order_spec("order:4", "order:4", "2"))["id"];
    store.post_move(a, {{"clock", "2"}, {"side", "A"}, {"element", "5"}});
    store.post_move(b, {{"clock", "1"}, {"side", "A"}, {"element", "2"}});
    auto path = std::filesystem::temp_directory_path() / "efk_snapshot_test.ndjson";
    store.save_snapshot(path.string());
    SessionStore loaded;
    CHECK(loaded.load_snapshot(path.string()) == 2);
    CHECK(loaded.get(a).dump() == store.get(a).dump());
    CHECK(loaded.get(b).dump() == store.get(b).dump());
    std::filesystem::remove(path);
  }

  TEST_CASE("sessions are isolated") {
    SessionStore interleaved, serial;
    Json spec = order_spec("order:w+1", "order:w+1", "w");
    std::vector<Json> moves{{{"clock", "3"}, {"side", "A"}, {"element", "2"}},
                            {{"clock", "2"}, {"side", "B"}, {"element", "w"}},
                            {{"clock", "1"}, {"side", "A"}, {"element", "7"}}};
    std::string x = interleaved.create(spec)["id"], y = interleaved.create(spec)["id"];
    for (const auto& m : moves) {
      interleaved.post_move(x, m);
      interleaved.post_move(y, m);
    }
    std::string sx = serial.create(spec)["id"];
    for (const auto& m : moves) serial.post_move(sx, m);
    std::string sy = serial.create(spec)["id"];
    for (const auto& m : moves) serial.post_move(sy, m);
    CHECK(interleaved.get(x)["transcript"] == serial.get(sx)["transcript"]);
    CHECK(interleaved.get(y)["transcript"] == serial.get(sy)["transcript"]);

    // Concurrent posts to distinct sessions.
    SessionStore store;
    std::vector<std::string> ids;
    for (int i = 0; i < 8; ++i) ids.push_back(store.create(spec)["id"]);
    std::vector<std::thread> threads;
    for (const auto& id : ids)
      threads.emplace_back([&store, id, &moves] {
        for (const auto& m : moves) store.post_move(id, m);
      });
    for (auto& t : threads) t.join();
    for (const auto& id : ids) CHECK(store.get(id)["transcript"] == serial.get(sx)["transcript"]);
  }

  TEST_CASE("HTTP endpoints") {
    SessionStore store;
    httplib::Server server;
    register_routes(server, store);
    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread t([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    auto r = client.Post("/sessions", order_spec("order:w+1", "order:w+1", "w").dump(), "application/json");
    REQUIRE(r);
    CHECK(r->status == 201);
    std::string id = Json::parse(r->body)["id"];

    r = client.Post("/sessions/" + id + "/moves", Json{{"clock", "2"}, {"side", "A"}, {"element", "w"}}.dump(),
                    "application/json");
    REQUIRE(r);
    CHECK(r->status == 200);
    r = client.Post("/sessions/" + id + "/moves", Json{{"clock", "5"}, {"side", "A"}, {"element", "1"}}.dump(),
                    "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);
    CHECK(Json::parse(r->body)["error"]["code"] == "CLOCK_NOT_DECREASING");

    r = client.Get("/sessions/" + id);
    REQUIRE(r);
    CHECK(Json::parse(r->body)["transcript"]["rounds"].size() == 1);
    r = client.Get("/sessions/nope");
    REQUIRE(r);
    CHECK(r->status == 404);
    r = client.Get("/sessions");
    REQUIRE(r);
    CHECK(Json::parse(r->body).size() == 1);
    r = client.Get("/sessions/" + id + "/export");
    REQUIRE(r);
    CHECK(Json::parse(r->body).contains("log"));
    r = client.Get("/parse?ordinal=w%2Bw");
    REQUIRE(r);
    CHECK(Json::parse(r->body)["notation"] == "w*2");
    r = client.Post("/sessions", "{not json", "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);

    server.stop();
    t.join();
  }
}
