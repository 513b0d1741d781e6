//! HTTP/JSON game service: sessions, engine replies and position analysis.
//! Schemas are documented in docs/http_api.md.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;
use uctadp_core::adp::{evaluate_board, TdConfig};
use uctadp_core::config::apply_overrides;
use uctadp_core::search::Search;
use uctadp_core::{AgentKind, BoardState, MlpModel, Move, Outcome, Player, SearchConfig};

pub const DEFAULT_ANALYSIS_ITERATIONS: u64 = 2000;

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> ApiError {
        ApiError {
            status,
            message: message.into(),
        }
    }

    fn not_found() -> ApiError {
        ApiError::new(StatusCode::NOT_FOUND, "no such game")
    }

    fn conflict(m: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::CONFLICT, m)
    }

    fn unprocessable(m: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, m)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(serde_json::json!({ "error": self.message }))).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Black,
    White,
}

impl From<Side> for Player {
    fn from(s: Side) -> Player {
        match s {
            Side::Black => Player::Black,
            Side::White => Player::White,
        }
    }
}

impl From<Player> for Side {
    fn from(p: Player) -> Side {
        match p {
            Player::Black => Side::Black,
            Player::White => Side::White,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub x: usize,
    pub y: usize,
}

impl From<Move> for Point {
    fn from(m: Move) -> Point {
        Point {
            x: m.x.into(),
            y: m.y.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoardView {
    /// 15 strings of `.`, `X` (black) and `O` (white), top row first.
    pub rows: Vec<String>,
    pub to_move: Side,
    pub history: Vec<Point>,
    /// `playing`, `black_wins`, `white_wins` or `draw`.
    pub status: String,
}

fn status(board: &BoardState) -> String {
    match board.outcome() {
        None => "playing",
        Some(Outcome::Win(Player::Black)) => "black_wins",
        Some(Outcome::Win(Player::White)) => "white_wins",
        Some(Outcome::Draw) => "draw",
    }
    .to_string()
}

impl BoardView {
    fn of(board: &BoardState) -> BoardView {
        BoardView {
            rows: board.to_text().lines().take(uctadp_core::SIZE).map(str::to_string).collect(),
            to_move: board.side_to_move().into(),
            history: board.history().iter().map(|&m| m.into()).collect(),
            status: status(board),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct NewGame {
    pub human_side: Option<Side>,
    pub agent: Option<String>,
    /// Moves played before the game starts, black first.
    #[serde(default)]
    pub moves: Vec<Point>,
    /// Search setting overrides, same keys as the config file.
    #[serde(default)]
    pub config: HashMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameView {
    pub id: String,
    pub human_side: Side,
    pub agent: String,
    pub board: BoardView,
    pub engine_moves: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoveReply {
    /// Absent when the human move ended the game.
    pub engine_move: Option<Point>,
    pub board: BoardView,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellAnalysis {
    pub x: usize,
    pub y: usize,
    /// Evaluator's win probability for the side to move after playing here.
    pub adp_value: f64,
    pub visits: u32,
    pub mean_value: Option<f64>,
    pub heuristic: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub to_move: Side,
    pub iterations: u64,
    pub best_move: Option<Point>,
    pub cells: Vec<CellAnalysis>,
}

#[derive(Debug, Deserialize)]
pub struct AnalysisQuery {
    pub iterations: Option<u64>,
}

struct Game {
    board: BoardState,
    human: Player,
    agent: AgentKind,
    config: SearchConfig,
    engine_moves: Vec<Move>,
}

struct Session {
    game: Mutex<Game>,
    /// Set while an engine search for this session is running.
    busy: AtomicBool,
}

/// Clears the busy flag when the move request finishes, however it ends.
struct BusyGuard<'a>(&'a AtomicBool);

impl Drop for BusyGuard<'_> {
    fn drop(&mut self) {
        self.0.store(false, Ordering::SeqCst);
    }
}

#[derive(Clone)]
pub struct AppState {
    model: Arc<MlpModel>,
    base: SearchConfig,
    agent: AgentKind,
    sessions: Arc<Mutex<HashMap<String, Arc<Session>>>>,
    next_id: Arc<AtomicU64>,
}

impl AppState {
    pub fn new(model: MlpModel, base: SearchConfig, agent: AgentKind) -> AppState {
        AppState {
            model: Arc::new(model),
            base,
            agent,
            sessions: Arc::default(),
            next_id: Arc::new(AtomicU64::new(1)),
        }
    }

    fn session(&self, id: &str) -> Result<Arc<Session>, ApiError> {
        self.sessions
            .lock()
            .expect("session map")
            .get(id)
            .cloned()
            .ok_or_else(ApiError::not_found)
    }
}

fn view(id: &str, g: &Game) -> GameView {
    GameView {
        id: id.to_string(),
        human_side: g.human.into(),
        agent: g.agent.to_string(),
        board: BoardView::of(&g.board),
        engine_moves: g.engine_moves.iter().map(|&m| m.into()).collect(),
    }
}

fn override_text(config: &HashMap<String, serde_json::Value>) -> Result<String, ApiError> {
    let mut text = String::new();
    for (k, v) in config {
        let v = match v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::Null => "none".to_string(),
            other => return Err(ApiError::unprocessable(format!("bad value for {k}: {other}"))),
        };
        text.push_str(&format!("{k} = {v}\n"));
    }
    Ok(text)
}

async fn engine_reply(model: Arc<MlpModel>, agent: AgentKind, board: BoardState, cfg: SearchConfig) -> Result<Move, ApiError> {
    tokio::task::spawn_blocking(move || agent.choose_move(&board, &model, &cfg))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
        .map_err(|e| ApiError::conflict(e.to_string()))
}

async fn create_game(State(app): State<AppState>, body: Result<Json<NewGame>, JsonRejection>) -> ApiResult<GameView> {
    let Json(req) = body.map_err(|e| ApiError::unprocessable(e.body_text()))?;
    let mut config = app.base;
    let mut td = TdConfig::default();
    apply_overrides(&override_text(&req.config)?, &mut config, &mut td)
        .map_err(|e| ApiError::unprocessable(e.to_string()))?;
    config.validate().map_err(|e| ApiError::unprocessable(e.to_string()))?;
    let agent = match req.agent {
        Some(a) => a.parse().map_err(ApiError::unprocessable)?,
        None => app.agent,
    };
    let human: Player = req.human_side.unwrap_or(Side::Black).into();
    let setup = req
        .moves
        .iter()
        .map(|p| Move::new(p.x, p.y).ok_or_else(|| ApiError::unprocessable("coordinates off the board")))
        .collect::<Result<Vec<_>, _>>()?;
    let board = BoardState::from_moves(setup).map_err(|e| ApiError::unprocessable(e.to_string()))?;
    let mut game = Game {
        board,
        human,
        agent,
        config,
        engine_moves: Vec::new(),
    };
    if game.board.side_to_move() != human && !game.board.is_terminal() {
        let m = engine_reply(app.model.clone(), agent, game.board.clone(), config).await?;
        game.board.play(m).expect("engine plays legal moves");
        game.engine_moves.push(m);
    }
    let id = format!("g{}", app.next_id.fetch_add(1, Ordering::SeqCst));
    let v = view(&id, &game);
    let session = Session {
        game: Mutex::new(game),
        busy: AtomicBool::new(false),
    };
    app.sessions.lock().expect("session map").insert(id, Arc::new(session));
    Ok(Json(v))
}

async fn get_game(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<GameView> {
    let s = app.session(&id)?;
    let g = s.game.lock().expect("game");
    Ok(Json(view(&id, &g)))
}

async fn delete_game(State(app): State<AppState>, Path(id): Path<String>) -> Result<StatusCode, ApiError> {
    app.sessions
        .lock()
        .expect("session map")
        .remove(&id)
        .map(|_| StatusCode::NO_CONTENT)
        .ok_or_else(ApiError::not_found)
}

async fn play_move(
    State(app): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<Point>, JsonRejection>,
) -> ApiResult<MoveReply> {
    let s = app.session(&id)?;
    let Json(p) = body.map_err(|e| ApiError::unprocessable(e.body_text()))?;
    let m = Move::new(p.x, p.y).ok_or_else(|| ApiError::unprocessable("coordinates off the board"))?;
    if s.busy.swap(true, Ordering::SeqCst) {
        return Err(ApiError::conflict("engine is thinking"));
    }
    let _guard = BusyGuard(&s.busy);
    let (board, agent, cfg) = {
        let mut g = s.game.lock().expect("game");
        if g.board.is_terminal() {
            return Err(ApiError::conflict("game is over"));
        }
        if g.board.side_to_move() != g.human {
            return Err(ApiError::conflict("not the human's turn"));
        }
        g.board.play(m).map_err(|e| ApiError::conflict(e.to_string()))?;
        if g.board.is_terminal() {
            return Ok(Json(MoveReply {
                engine_move: None,
                board: BoardView::of(&g.board),
                status: status(&g.board),
            }));
        }
        (g.board.clone(), g.agent, g.config)
    };
    let reply = engine_reply(app.model.clone(), agent, board, cfg).await?;
    let mut g = s.game.lock().expect("game");
    g.board.play(reply).expect("engine plays legal moves");
    g.engine_moves.push(reply);
    Ok(Json(MoveReply {
        engine_move: Some(reply.into()),
        board: BoardView::of(&g.board),
        status: status(&g.board),
    }))
}

/// Per-candidate evaluator values plus root statistics of a bounded search.
pub fn analyse(board: &BoardState, model: &MlpModel, cfg: SearchConfig) -> Analysis {
    let to_move: Side = board.side_to_move().into();
    if board.is_terminal() {
        return Analysis {
            to_move,
            iterations: 0,
            best_move: None,
            cells: Vec::new(),
        };
    }
    let mut search = Search::new(board, cfg, model).expect("validated config");
    search.run_for(None);
    let result = search.result();
    let cells = board
        .candidate_moves()
        .into_iter()
        .map(|m| {
            let after = board.apply_move(m).expect("candidate is empty");
            let stats = result.root_children.iter().find(|c| c.mv == m);
            CellAnalysis {
                x: m.x.into(),
                y: m.y.into(),
                adp_value: 1.0 - evaluate_board(model, &after),
                visits: stats.map_or(0, |c| c.visits),
                mean_value: stats.map(|c| c.mean),
                heuristic: stats.map(|c| c.h),
            }
        })
        .collect();
    Analysis {
        to_move,
        iterations: result.iterations,
        best_move: Some(result.best.into()),
        cells,
    }
}

async fn analysis(
    State(app): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<AnalysisQuery>,
) -> ApiResult<Analysis> {
    let s = app.session(&id)?;
    let (board, agent, config) = {
        let g = s.game.lock().expect("game");
        (g.board.clone(), g.agent, g.config)
    };
    let cfg = SearchConfig {
        iteration_budget: Some(q.iterations.unwrap_or(DEFAULT_ANALYSIS_ITERATIONS).max(1)),
        time_budget_ms: None,
        ..agent.search_config(&config)
    };
    let model = app.model.clone();
    let a = tokio::task::spawn_blocking(move || analyse(&board, &model, cfg))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    Ok(Json(a))
}

/// API routes under `/games`, everything else served from `static_dir`.
pub fn router(app: AppState, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/games", post(create_game))
        .route("/games/:id", get(get_game).delete(delete_game))
        .route("/games/:id/moves", post(play_move))
        .route("/games/:id/analysis", get(analysis))
        .with_state(app);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

pub async fn serve(addr: SocketAddr, app: AppState, static_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(app, static_dir)).await
}
