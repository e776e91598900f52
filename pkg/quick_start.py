QUICK_START = """
╔══════════════════════════════════════════════════════════════╗
║           IGMTF - QUICK START GUIDE                           ║
╚══════════════════════════════════════════════════════════════╝

📦 1. ВСТАНОВЛЕННЯ
   pip install -r requirements.txt

📂 2. ДАНІ
   Файл: один рядок на часову мітку, значення через кому (можна .gz)
   Бенчмарки: traffic.txt, electricity.txt, exchange_rate.txt
   export IGMTF_DATA_DIR=/path/to/datasets   (або у .env)

   Синтетичний датасет для перевірки:
   python scripts/make_synthetic.py --out data/sinusoids.txt

▶️  3. ЗАПУСК
   python main.py --data data/sinusoids.txt --window 16 --horizon 3 \\
       --hidden 16 --k 3 --neighbors 5 --lr 0.001 --epochs 20 --out report.yaml

   Для відомого датасету гіперпараметри беруться з таблиці:
   python main.py --data exchange_rate --horizon 3 --epochs 30

🔬 4. АБЛЯЦІЯ
   --variant full   повна модель
   --variant ns     випадковий вибір міток замість семплера подібності
   --variant nw     без матриць відображення W_h / W_e

📊 5. СІТКА
   python main.py --data exchange_rate --sweep-k 3,5,10,20,30 --neighbors 10 \\
       --out sweeps/k.yaml --workers 4
   Звіт кожної клітинки: sweeps/k_h3_k5_n10.yaml, зведення: sweeps/k.yaml
   python main.py --data exchange_rate --sweep-h grid --out sweeps/h.yaml
   grid: k, N з 3,5,10,20,30; h з 3,6,12,24 (k, N, l, γ - з таблиці для кожного h)

⚙️  6. КОНФІГУРАЦІЯ
   config.yaml              значення за замовчуванням, логування, паралелізм
   --config run.yaml        плаский YAML з ключами прапорців
   Прапорці мають пріоритет над файлами.

💡 7. КОРИСНІ ПОРАДИ

   - --checkpoint best.npz зберігає найкращі за валідацією параметри
   - --dump-adjacency adj.txt записує граф першої тестової мітки
   - --patience 10 вмикає ранню зупинку за валідаційним RRSE
   - runtime.bank_workers / eval_workers у config.yaml - потоки для банку та оцінювання

🆘 8. КОДИ ВИХОДУ

   0  успіх
   2  помилка конфігурації або даних (повідомлення у stderr)
   3  помилка під час навчання

🧪 9. ТЕСТИ
   pytest                     швидкі тести
   pytest --runslow           перенавчання та абляція
   pytest --reproduction      Exchange-Rate (потрібен IGMTF_DATA_DIR)

╔══════════════════════════════════════════════════════════════╗
║  Успіхів у використанні IGMTF! 🚀                             ║
╚══════════════════════════════════════════════════════════════╝
"""

if __name__ == "__main__":
    print(QUICK_START)
